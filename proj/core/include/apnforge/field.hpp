#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apnforge {

// Field element: canonical index sum c_i p^i of its coordinate vector in the
// polynomial basis 1, x, ..., x^{n-1}.
struct Fe {
  std::uint32_t v = 0;

  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

struct FieldOptions {
  // Fields up to this size get log/exp/Zech tables.
  std::uint32_t table_cap = 1u << 20;
};

inline constexpr std::uint64_t kFieldGuard = 1ull << 31;

// Immutable GF(p^n), p odd. Cheap to copy; copies share tables.
class Field {
 public:
  static Field build(std::uint32_t p, std::uint32_t n,
                     std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                     FieldOptions options = {});

  std::uint32_t p() const;
  std::uint32_t n() const;
  std::uint32_t q() const;
  // Monic modulus coefficients, constant term first (size n+1).
  const std::vector<std::uint32_t>& modulus() const;
  Fe generator() const;
  bool has_tables() const;

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }
  Fe element(std::uint64_t index) const;
  // Image of an integer in the prime subfield.
  Fe from_int(std::int64_t value) const;

  Fe add(Fe x, Fe y) const;
  Fe sub(Fe x, Fe y) const;
  Fe neg(Fe x) const;
  Fe mul(Fe x, Fe y) const;
  Fe inv(Fe x) const;
  Fe div(Fe x, Fe y) const;
  // 0^0 = 1.
  Fe pow(Fe x, std::uint64_t e) const;
  Fe gen_pow(std::uint64_t k) const;
  // Discrete log to the generator; nullopt for zero.
  std::optional<std::uint64_t> log(Fe x) const;

  int quad_char(Fe x) const;
  bool is_square(Fe x) const { return quad_char(x) == 1; }
  // Both roots ordered by canonical index; nullopt for nonsquares.
  std::optional<std::pair<Fe, Fe>> sqrt(Fe x) const;
  Fe first_nonsquare() const;

  // Absolute trace, as an integer in [0, p).
  std::uint32_t trace(Fe x) const;
  // x^{(p^n-1)/(p^d-1)}; d must divide n.
  Fe norm_rel(Fe x, std::uint32_t d) const;
  // x^{p^k}; k is taken mod n.
  Fe frobenius(Fe x, std::uint32_t k) const;
  bool in_subfield(Fe x, std::uint32_t d) const;

  std::vector<std::uint32_t> digits(Fe x) const;
  Fe from_digits(std::span<const std::uint32_t> digits) const;

  // "p^n/c0,...,cn".
  std::string descriptor() const;
  // "g^k (#idx)" for nonzero, "0 (#0)" for zero.
  std::string describe(Fe x) const;

  bool same_as(const Field& other) const;

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

bool two_is_square(std::uint32_t p, std::uint32_t n);
bool is_prime(std::uint64_t n);
// Returns (p, n) when q = p^n with p an odd prime.
std::optional<std::pair<std::uint32_t, std::uint32_t>> odd_prime_power(std::uint64_t q);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Accepts "p^n", "p", or "p^n/c0,...,cn".
Field parse_field(std::string_view descriptor, FieldOptions options = {});
// Accepts an integer (prime-subfield image, may be negative), "#idx" or
// "i:idx" (canonical index), "g^k"/"w^k"/"g"/"w" (generator powers).
Fe parse_element(const Field& field, std::string_view text);

}  // namespace apnforge
