#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apnforge/field.hpp"

namespace apnforge {

// Over F_Q, Q = p^n, with inner power q = p^k and d = gcd(n, k).
struct KimInstance {
  std::uint32_t k = 1;
  std::uint32_t d = 1;
  Fe A;
  std::optional<Fe> U;
};

// A = (U - U^q)^{q^2+1} / (U - U^{q^2})^{q+1}; U must avoid F_{p^{2d}}.
Fe kim_A_from_U(const Field& field, std::uint32_t k, Fe U);
KimInstance kim_instance_from_U(const Field& field, std::uint32_t k, Fe U);
// x_0 = -1/(1+(U-U^q)^{q-1}) followed by x_alpha = -(U+alpha)^{q^2-q}/(1+(U-U^q)^{q-1}),
// alpha over F_{p^d} in canonical order.
std::vector<Fe> kim_roots_from_U(const Field& field, std::uint32_t k, Fe U);
// Roots of X^{q+1} + X + A, sorted.
std::vector<Fe> solve_kim_brute(const Field& field, std::uint32_t k, Fe A);
std::vector<Fe> valid_U_set(const Field& field, std::uint32_t k);

// Sign patterns (eta(x+a), eta(x)) of the j = k derivative equation.
enum class DCase { kD11, kDm1m1, kD1m1, kDm11 };
std::string dcase_name(DCase c);

// Case D1-1 / D-11 written as x^{q+1} + r x^q + s x + t = 0 and moved to
// X^{q+1} + X + A = 0 by x = cX - r, c^q = s - r^q.
struct DCaseReduction {
  DCase tag = DCase::kD1m1;
  Fe r, s, t, c, A;
};

DCaseReduction reduce_d_case(const Field& field, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b);
// (-+2b a^{-q-1} - u^2 + 1) / (u - u^{1/q})^{q+1}.
Fe kim_A_closed_form(const Field& field, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b);
Fe b_for_target_A(const Field& field, std::uint32_t k, DCase tag, Fe u, Fe a, Fe A_target);
// Roots of the case equation itself, before any eta filtering.
std::vector<Fe> d_case_roots_brute(const Field& field, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b);

// eps = 1 when -1 is a (p^k - 1)-th power in F_Q.
bool minus_one_is_power(const Field& field, std::uint32_t k);

struct LinearCaseCount {
  std::uint64_t roots = 0;   // of x^q + a^{q-1} x + a^q - b/(a(u +- 1))
  std::uint64_t kernel = 0;  // of x^q + a^{q-1} x
  bool eps = false;
};

LinearCaseCount linear_case_root_count(const Field& field, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b);

struct KimWitness {
  Fe U, A, a, b, xi;
  DCase tag = DCase::kDm11;
  std::vector<Fe> normalized_roots;  // roots of X^{q+1}+X+A
  std::vector<Fe> mapped_roots;      // x = cX - r
  std::vector<Fe> surviving;         // mapped roots with the case's eta signs
  bool literal_system = false;       // square conditions applied to x_0, x_1, x_{-1} directly
  std::uint32_t ddt_count = 0;
};

struct KimSearchResult {
  std::optional<KimWitness> witness;
  std::uint64_t valid_u_count = 0;
  std::uint64_t pairs_examined = 0;
};

// Enumerates valid U, then a outside {0, 1}, over both quadratic cases.
KimSearchResult find_equazionegen_witness(const Field& field, std::uint32_t k, Fe u,
                                          std::optional<Fe> xi = std::nullopt);

}  // namespace apnforge
