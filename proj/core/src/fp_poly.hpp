#pragma once

// Dense polynomials over a prime field, used only for modulus handling.

#include <cstdint>
#include <vector>

namespace apnforge::detail {

using FpPoly = std::vector<std::uint32_t>;  // low degree first, trimmed

inline std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((a * b) % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
void trim(FpPoly& a);
int degree(const FpPoly& a);
FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p);
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p);
FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint32_t p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint32_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p);
// Rabin's test; f monic of degree >= 1.
bool fp_irreducible(const FpPoly& f, std::uint32_t p);

}  // namespace apnforge::detail
