#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apnforge/ddt.hpp"
#include "apnforge/field.hpp"

namespace apnforge {

// x^3 + B x^2 + C x + D.
struct MonicCubic {
  Fe B, C, D;
};

Fe eval_cubic(const Field& field, const MonicCubic& g, Fe x);
// Standard discriminant B^2C^2 - 4C^3 - 4B^3D - 27D^2 + 18BCD.
Fe cubic_discriminant(const Field& field, const MonicCubic& g);
// (B^2-3C) T^2 + (BC-9D) T + (C^2-3BD).
std::array<Fe, 3> hessian_of(const Field& field, const MonicCubic& g);  // {T^2, T, 1}

// G for the CUBE3 derivative with t_a = eps = -t_x:
// x^3 + 3a(u+eps)/(2eps) x^2 + 3a^2(u+eps)/(2eps) x + (a^3(u+eps)-b)/(2eps).
MonicCubic cube3_case_cubic(const Field& field, Fe u, Fe a, Fe b, int eps);

struct HessianData {
  std::array<Fe, 3> H;         // -(9/4)((-a^2u^2+a^2)T^2 + (-a^3u^2+a^3-2b)T + (-abu-ab))
  Fe delta;                    // (81/16)(a^6u^4 - 2a^6u^2 + a^6 - 4a^3bu^3 + 4a^3bu + 4b^2)
  Fe discriminant_of_H;        // H[1]^2 - 4 H[0] H[2]
  std::array<Fe, 3> hessian_G;  // Hessian of cube3_case_cubic(eps = +1)
};

HessianData hessian_data(const Field& field, Fe u, Fe a, Fe b);

enum class CubicPath { kFormula, kPureCubic, kEnumeration };
std::string cubic_path_name(CubicPath p);

struct CubicRoots {
  std::vector<Fe> roots;  // multiset, sorted
  CubicPath path = CubicPath::kEnumeration;
  // Criterion ingredients (set when the Hessian has nonzero leading term).
  bool hessian_square = false;  // discriminant of H a nonzero square
  bool ratio_cube = false;
  bool discriminant_nonzero = false;
  std::optional<std::array<Fe, 2>> beta;
  std::optional<Fe> e;
};

Fe primitive_cube_root_of_unity(const Field& field);
// Some e with e^3 = x; nullopt for non-cubes.
std::optional<Fe> cube_root(const Field& field, Fe x);

CubicRoots solve_cubic(const Field& field, const MonicCubic& g);
std::vector<Fe> cubic_roots_brute(const Field& field, const MonicCubic& g);  // with multiplicity

// (a^3u^3 - a^3u - 2b - 4X/9) / (a^3u^3 - a^3u - 2b + 4X/9) for X^2 = delta(a, b).
Fe cube_ratio(const Field& field, Fe u, Fe a, Fe b, Fe X);
// Hessian roots (a^3u^2 - a^3 + 2b +- 4X/9) / (2a^2(1-u^2)).
std::array<Fe, 2> hessian_roots_from_X(const Field& field, Fe u, Fe a, Fe b, Fe X);

// a3 x^3 + b2 x^2 + c1 x + d0 permutes F_q iff b2^2 = 3 a3 c1 and q = 2 mod 3.
bool is_perm_cubic(const Field& field, Fe a3, Fe b2, Fe c1, Fe d0);

struct Cube3Entry {
  Fe u;
  bool excluded = false;
  std::uint32_t du = 0;
  Spectrum spectrum;
};

struct Cube3Report {
  std::vector<Cube3Entry> entries;  // every u != 0, canonical order
  std::vector<Fe> apn_u;            // all nonzero u with du = 2
  std::vector<std::uint32_t> du_values;  // over u outside {0, +-1}
  std::vector<ClaimCheck> claims;   // published prose claims for this (p, n), if any
};

Cube3Report cube3_family_report(const Field& field);

struct Cube3Probe {
  Fe a, b;
  int eps = 1;
  std::array<Fe, 3> roots;
  std::uint32_t direct_count = 0;
};

// Searches a in {1, xi}, all b, for G_eps with three distinct roots all
// carrying the case signs; q = 1 mod 3.
std::optional<Cube3Probe> cube3_three_root_probe(const Field& field, Fe u);

}  // namespace apnforge
