#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apnforge/ddt.hpp"
#include "apnforge/field.hpp"

namespace apnforge {

// Element of Z[w], w a primitive p-th root of unity, stored as sum c_i w^i
// with c_{p-1} = 0.
class CycInt {
 public:
  explicit CycInt(std::uint32_t p);
  CycInt(std::uint32_t p, std::vector<std::int64_t> coeffs);
  static CycInt rational(std::uint32_t p, std::int64_t value);
  static CycInt root(std::uint32_t p, std::uint32_t i);

  std::uint32_t p() const { return p_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt& operator+=(const CycInt& o);
  bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }

  // Complex conjugate: w^i -> w^{-i}.
  CycInt conj() const;
  // Multiply by w^t.
  CycInt rotate(std::uint32_t t) const;
  bool is_rational() const;
  std::int64_t rational_value() const;
  std::string to_string() const;

 private:
  void canonicalize();
  std::uint32_t p_;
  std::vector<std::int64_t> c_;
};

// chi_1(x) = w^{Tr(x)}.
CycInt additive_character(const Field& field, Fe x);

struct WeilParams {
  std::uint32_t j = 0;
  std::uint32_t k = 0;
  Fe u;
  int eps = 1;
  int mu = 1;
  Fe a{1};
};

struct AlphaCoefficients {
  Fe A1, A2, B;
};

// A1 = alpha(u+eps), A2 = -alpha(u+eps mu),
// B = (alpha a (u+eps))^{p^{n-k}} + alpha a^{p^k} (u+eps).
AlphaCoefficients alpha_coefficients(const Field& field, const WeilParams& params, Fe alpha);

// S_alpha = sum_x chi_1(A1 x^{p^k+1} + A2 x^{p^j+1} + B x).
CycInt s_alpha(const Field& field, const WeilParams& params, Fe alpha);

// lhs = S * conj(S); rhs = q * sum over E(z) = 0 of chi_1(A1 z^{p^k+1} + A2 z^{p^j+1} + B z),
// where E(z) = A1 z^{p^k} + (A1 z)^{p^{n-k}} + A2 z^{p^j} + (A2 z)^{p^{n-j}} is the
// coefficient of y in Tr(Q(y + z) - Q(y) - Q(z)).
std::pair<CycInt, CycInt> s_alpha_sq_identity(const Field& field, const WeilParams& params, Fe alpha);
std::vector<Fe> e_kernel(const Field& field, const WeilParams& params, Fe alpha);
// Kernel of A1(z^{p^k} + z^{p^{n-k}}) + A2(z^{p^j} + z^{p^{n-j}}), the form with the
// coefficients outside the Frobenius twist, and the right-hand side it gives.
// Agrees with e_kernel when A1, A2 are fixed by the twists.
std::vector<Fe> e_kernel_printed(const Field& field, const WeilParams& params, Fe alpha);
CycInt s_alpha_sq_printed_rhs(const Field& field, const WeilParams& params, Fe alpha);

// Number of x with
//   (u+eps)x^{p^k+1} - (u+eps mu)x^{p^j+1} + (u+eps)(a x^{p^k} + a^{p^k} x) + (u+eps)a^{p^k+1} - b = 0
// computed as q^{-1} sum_alpha chi_1(alpha((u+eps)a^{p^k+1} - b)) S_alpha.
std::uint64_t ddt_entry_weil(const Field& field, const WeilParams& params, Fe b);
// Same for every b at once (S_alpha shared across b).
std::vector<std::uint64_t> ddt_row_weil(const Field& field, const WeilParams& params);

// Direct enumeration of the same equation.
std::uint64_t case_equation_count(const Field& field, const WeilParams& params, Fe b);
std::vector<std::uint64_t> case_equation_row(const Field& field, const WeilParams& params);

// x^{p^r} + gamma x permutes F_q iff (-1)^{n/d} gamma^{(q-1)/(p^d-1)} != 1, d = gcd(n, r).
bool linearized_is_permutation(const Field& field, std::uint32_t r, Fe gamma);

struct CorollaryEntry {
  int eps = 1;
  Fe b;  // (u+eps) a^{p^k+1} with a = 1
  std::uint64_t count = 0;
  bool equals_q = false;
};

struct CorollaryReport {
  std::uint32_t k = 0;
  Fe u;
  std::uint32_t du = 0;
  bool not_apn = false;
  ApnWitness witness;
  std::vector<CorollaryEntry> literal;  // mu = -1
};

// GEN_JK with j = k; requires n / gcd(n, 2k) odd.
CorollaryReport corollary_nonapn_check(const Field& field, std::uint32_t k, Fe u);

}  // namespace apnforge
