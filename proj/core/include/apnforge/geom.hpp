#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apnforge/field.hpp"

namespace apnforge {

// Places of the lower field that ramify in one Kummer step y^n = f:
// `degree` is the summed degree of the places sharing r = gcd(n, v(f)).
struct RamifiedPlace {
  std::uint64_t degree = 1;
  std::uint32_t r = 1;
};

struct RamificationDatum {
  std::uint32_t n = 2;
  std::int64_t base_genus = 0;
  std::vector<RamifiedPlace> places;  // only r < n matters
  std::string label;
};

// g' = 1 + n(g - 1) + (1/2) sum deg(P)(n - r_P).
std::int64_t kummer_genus(const RamificationDatum& datum);
// Genera g_0, g_1, ...; each step's base_genus must equal the running value.
std::vector<std::int64_t> tower_genus_sequence(std::int64_t g0, std::span<const RamificationDatum> steps);

struct HasseWeilInterval {
  std::int64_t lower = 0;  // q + 1 - floor(2g sqrt(q))
  std::int64_t upper = 0;
};
HasseWeilInterval hasse_weil_interval(std::int64_t g, std::uint64_t q);

// (q + 1 - B)^2 > 4 g^2 q with q + 1 > B: every curve of genus g has more than B points.
bool threshold_predicate_exact(std::int64_t g, std::int64_t B, std::uint64_t q);
// q - 2g sqrt(q) - (B - 1) > 0, evaluated in integers.
bool threshold_predicate_printed(std::int64_t g, std::int64_t B, std::uint64_t q);

struct ThresholdResult {
  std::int64_t g = 0;
  std::int64_t B = 0;
  std::uint64_t q0_exact = 0;
  std::uint64_t q0_printed = 0;
  std::uint64_t predecessor = 0;  // largest prime power below q0_exact
};

// Least prime power q from which the predicate holds for every larger prime power.
ThresholdResult solvability_threshold(std::int64_t g, std::int64_t B);
bool is_prime_power(std::uint64_t q);

// Rational function num/den in one variable over F_q, ascending coefficients.
struct RationalFunction {
  std::vector<Fe> num;
  std::vector<Fe> den{Fe{1}};
};

struct KummerStep {
  std::uint32_t n = 2;
  RationalFunction f;
  std::string label;
};

struct TowerDerivation {
  std::vector<RamificationDatum> steps;
  std::vector<std::int64_t> genera;  // starting with 0 for the rational base
};

// Every f_i lies in the rational base field F(W). Places of F(W) are grouped
// into coprime squarefree classes with a common valuation vector; above a
// class the tower has uniform ramification, which gives r for every step.
TowerDerivation derive_tower(const Field& field, std::span<const KummerStep> steps);

// Tower for the three-root system: X^2 = f1(W), s = a(u+1)/xi - W^2, ...
// with Y determined linearly (degree-one step).
std::vector<KummerStep> system2_tower_steps(const Field& field, Fe u, Fe a, Fe xi);
// Tower over F_Q(U) attached to the Kim parametrization with q = p^k.
std::vector<KummerStep> kim_tower_steps(const Field& field, std::uint32_t k, Fe a, Fe xi);

}  // namespace apnforge
