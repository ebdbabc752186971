#pragma once

#include <utility>
#include <vector>

#include "apnforge/field.hpp"

namespace apnforge::detail {

// Dense polynomial over F_q, ascending coefficients, no trailing zeros.
using FqPoly = std::vector<Fe>;

void fq_trim(FqPoly& f);
int fq_degree(const FqPoly& f);  // -1 for zero
FqPoly fq_add(const Field& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_sub(const Field& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_mul(const Field& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_scale(const Field& F, const FqPoly& f, Fe c);
FqPoly fq_pow(const Field& F, FqPoly f, std::uint64_t e);
std::pair<FqPoly, FqPoly> fq_divmod(const Field& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_div_exact(const Field& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_monic(const Field& F, const FqPoly& f);
FqPoly fq_gcd(const Field& F, FqPoly f, FqPoly g);  // monic
FqPoly fq_derivative(const Field& F, const FqPoly& f);
// Squarefree decomposition of a nonzero polynomial: monic pairwise coprime
// squarefree factors with multiplicities (constant factor dropped).
std::vector<std::pair<FqPoly, std::uint64_t>> fq_squarefree(const Field& F, const FqPoly& f);

}  // namespace apnforge::detail
