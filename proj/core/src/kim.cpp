#include "apnforge/kim.hpp"

#include <algorithm>
#include <numeric>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"

namespace apnforge {

namespace {

std::uint64_t ppow(const Field& f, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= f.p();
  return r;
}

void check_k(const Field& f, std::uint32_t k) {
  if (k == 0 || k >= f.n()) throw Error(ErrorCode::kInvalidArgument, "need 0 < k < n");
}

std::uint32_t kim_d(const Field& f, std::uint32_t k) { return std::gcd(f.n(), k); }

// Exponents reduced mod Q-1 where needed; q^2 may exceed 64 bits only for
// huge fields, which the guard excludes.
struct KimPowers {
  std::uint64_t q, q2;
};

KimPowers kim_powers(const Field& f, std::uint32_t k) {
  const std::uint64_t q = ppow(f, k);
  return {q, q * q};
}

Fe denominator(const Field& f, std::uint32_t k, Fe U) {
  const KimPowers pw = kim_powers(f, k);
  const Fe diff = f.sub(U, f.frobenius(U, k));
  return f.add(f.one(), f.pow(diff, pw.q - 1));
}

}  // namespace

std::string dcase_name(DCase c) {
  switch (c) {
    case DCase::kD11: return "D11";
    case DCase::kDm1m1: return "D-1-1";
    case DCase::kD1m1: return "D1-1";
    case DCase::kDm11: return "D-11";
  }
  return "?";
}

Fe kim_A_from_U(const Field& f, std::uint32_t k, Fe U) {
  check_k(f, k);
  const std::uint32_t d = kim_d(f, k);
  if (f.in_subfield(U, 2 * d)) throw Error(ErrorCode::kUInSubfield, "U lies in F_{p^{2d}}");
  const KimPowers pw = kim_powers(f, k);
  const Fe num = f.pow(f.sub(U, f.frobenius(U, k)), pw.q2 + 1);
  const Fe den = f.pow(f.sub(U, f.frobenius(U, 2 * k)), pw.q + 1);
  if (den == f.zero()) throw Error(ErrorCode::kZeroDenominator, "U - U^{q^2} vanishes");
  return f.div(num, den);
}

KimInstance kim_instance_from_U(const Field& f, std::uint32_t k, Fe U) {
  return KimInstance{k, kim_d(f, k), kim_A_from_U(f, k, U), U};
}

std::vector<Fe> kim_roots_from_U(const Field& f, std::uint32_t k, Fe U) {
  check_k(f, k);
  const std::uint32_t d = kim_d(f, k);
  if (f.in_subfield(U, 2 * d)) throw Error(ErrorCode::kUInSubfield, "U lies in F_{p^{2d}}");
  const KimPowers pw = kim_powers(f, k);
  const Fe den = denominator(f, k, U);
  if (den == f.zero()) throw Error(ErrorCode::kZeroDenominator, "1 + (U - U^q)^{q-1} vanishes");
  const Fe inv_den = f.inv(den);
  std::vector<Fe> roots{f.neg(inv_den)};
  for (std::uint32_t al = 0; al < f.q(); ++al) {
    const Fe alpha{al};
    if (!f.in_subfield(alpha, d)) continue;
    roots.push_back(f.neg(f.mul(f.pow(f.add(U, alpha), pw.q2 - pw.q), inv_den)));
  }
  return roots;
}

std::vector<Fe> solve_kim_brute(const Field& f, std::uint32_t k, Fe A) {
  check_k(f, k);
  const KimPowers pw = kim_powers(f, k);
  std::vector<Fe> roots;
  for (std::uint32_t xi = 0; xi < f.q(); ++xi) {
    const Fe X{xi};
    if (f.add(f.add(f.pow(X, pw.q + 1), X), A) == f.zero()) roots.push_back(X);
  }
  return roots;
}

std::vector<Fe> valid_U_set(const Field& f, std::uint32_t k) {
  check_k(f, k);
  const std::uint32_t d = kim_d(f, k);
  std::vector<Fe> out;
  for (std::uint32_t ui = 0; ui < f.q(); ++ui) {
    if (!f.in_subfield(Fe{ui}, 2 * d)) out.push_back(Fe{ui});
  }
  return out;
}

DCaseReduction reduce_d_case(const Field& f, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b) {
  check_k(f, k);
  if (tag != DCase::kD1m1 && tag != DCase::kDm11) {
    throw Error(ErrorCode::kInvalidArgument, "only D1-1 and D-11 reduce to the Kim form");
  }
  if (f.frobenius(u, k) == u) {
    throw Error(ErrorCode::kDegenerateDenominator, "u is fixed by x -> x^q");
  }
  const KimPowers pw = kim_powers(f, k);
  const Fe half = f.inv(f.from_int(2));
  const Fe factor = tag == DCase::kD1m1 ? f.add(f.one(), u) : f.sub(f.one(), u);
  const Fe aq = f.frobenius(a, k);
  const Fe aq1 = f.mul(aq, a);
  DCaseReduction red;
  red.tag = tag;
  red.r = f.mul(f.mul(a, factor), half);
  red.s = f.mul(f.mul(aq, factor), half);
  const Fe tb = tag == DCase::kD1m1 ? f.neg(b) : b;
  red.t = f.mul(f.add(f.mul(aq1, factor), tb), half);
  const Fe cq = f.sub(red.s, f.frobenius(red.r, k));
  red.c = f.frobenius(cq, f.n() - k);
  const Fe cq1 = f.pow(red.c, pw.q + 1);
  if (cq1 == f.zero()) throw Error(ErrorCode::kDegenerateDenominator, "substitution scale vanishes");
  red.A = f.div(f.sub(red.t, f.mul(red.s, red.r)), cq1);
  return red;
}

Fe kim_A_closed_form(const Field& f, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b) {
  check_k(f, k);
  const KimPowers pw = kim_powers(f, k);
  const Fe u_root = f.frobenius(u, f.n() - k);
  const Fe den = f.pow(f.sub(u, u_root), pw.q + 1);
  if (den == f.zero()) throw Error(ErrorCode::kDegenerateDenominator, "(u - u^{1/q})^{q+1} vanishes");
  const Fe two_b = f.mul(f.from_int(2), b);
  const Fe term = f.div(tag == DCase::kD1m1 ? f.neg(two_b) : two_b, f.pow(a, pw.q + 1));
  const Fe num = f.add(f.sub(term, f.mul(u, u)), f.one());
  return f.div(num, den);
}

Fe b_for_target_A(const Field& f, std::uint32_t k, DCase tag, Fe u, Fe a, Fe A_target) {
  const DCaseReduction red = reduce_d_case(f, k, tag, u, a, f.zero());
  const KimPowers pw = kim_powers(f, k);
  // t(b) = t(0) -+ b/2 and A = (t - s r) / c^{q+1}
  const Fe need_t = f.add(f.mul(A_target, f.pow(red.c, pw.q + 1)), f.mul(red.s, red.r));
  const Fe two_delta = f.mul(f.from_int(2), f.sub(need_t, red.t));
  return tag == DCase::kD1m1 ? f.neg(two_delta) : two_delta;
}

std::vector<Fe> d_case_roots_brute(const Field& f, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b) {
  check_k(f, k);
  const KimPowers pw = kim_powers(f, k);
  const int ta = tag == DCase::kD11 || tag == DCase::kD1m1 ? 1 : -1;
  const int tx = tag == DCase::kD11 || tag == DCase::kDm11 ? 1 : -1;
  const Fe ca = f.add(f.from_int(ta), u);
  const Fe cx = f.add(f.from_int(tx), u);
  std::vector<Fe> roots;
  for (std::uint32_t xi = 0; xi < f.q(); ++xi) {
    const Fe x{xi};
    const Fe lhs = f.sub(f.mul(f.pow(f.add(x, a), pw.q + 1), ca), f.mul(f.pow(x, pw.q + 1), cx));
    if (lhs == b) roots.push_back(x);
  }
  return roots;
}

bool minus_one_is_power(const Field& f, std::uint32_t k) {
  const std::uint64_t e = ppow(f, k) - 1;
  const Fe m1 = f.neg(f.one());
  for (std::uint32_t yi = 1; yi < f.q(); ++yi) {
    if (f.pow(Fe{yi}, e) == m1) return true;
  }
  return false;
}

LinearCaseCount linear_case_root_count(const Field& f, std::uint32_t k, DCase tag, Fe u, Fe a, Fe b) {
  check_k(f, k);
  if (tag != DCase::kD11 && tag != DCase::kDm1m1) {
    throw Error(ErrorCode::kInvalidArgument, "linear rows are D11 and D-1-1");
  }
  const KimPowers pw = kim_powers(f, k);
  const Fe shift = tag == DCase::kD11 ? f.add(u, f.one()) : f.sub(u, f.one());
  if (shift == f.zero() || a == f.zero()) throw Error(ErrorCode::kDegenerateU, "u = +-1 or a = 0");
  const Fe aq1 = f.pow(a, pw.q - 1);
  const Fe c0 = f.sub(f.frobenius(a, k), f.div(b, f.mul(a, shift)));
  LinearCaseCount out;
  for (std::uint32_t xi = 0; xi < f.q(); ++xi) {
    const Fe x{xi};
    const Fe lin = f.add(f.frobenius(x, k), f.mul(aq1, x));
    out.kernel += lin == f.zero();
    out.roots += f.add(lin, c0) == f.zero();
  }
  out.eps = minus_one_is_power(f, k);
  return out;
}

KimSearchResult find_equazionegen_witness(const Field& f, std::uint32_t k, Fe u, std::optional<Fe> xi_opt) {
  check_k(f, k);
  if (u == f.one() || u == f.neg(f.one())) throw Error(ErrorCode::kDegenerateU, "u must not be +-1");
  if (f.frobenius(u, k) == u) throw Error(ErrorCode::kDegenerateDenominator, "u is fixed by x -> x^q");
  const Fe xi = xi_opt.value_or(f.first_nonsquare());
  if (f.quad_char(xi) != -1) throw Error(ErrorCode::kNonsquareXiRequired, "xi must be a nonsquare");
  const SparsePoly F = make_family(f, FamilyParams{Family::kGenJK, u, k, k});
  const auto values = F.values(f);
  KimSearchResult res;
  const auto Us = valid_U_set(f, k);
  res.valid_u_count = Us.size();
  const std::uint32_t d = kim_d(f, k);
  for (Fe U : Us) {
    const Fe A = kim_A_from_U(f, k, U);
    const auto X = kim_roots_from_U(f, k, U);
    for (std::uint32_t ai = 2; ai < f.q(); ++ai) {
      const Fe a{ai};
      for (DCase tag : {DCase::kDm11, DCase::kD1m1}) {
        ++res.pairs_examined;
        const Fe b = b_for_target_A(f, k, tag, u, a, A);
        const DCaseReduction red = reduce_d_case(f, k, tag, u, a, b);
        const int tx = tag == DCase::kDm11 ? 1 : -1;
        const int ta = -tx;
        KimWitness w;
        w.U = U;
        w.A = A;
        w.a = a;
        w.b = b;
        w.xi = xi;
        w.tag = tag;
        w.normalized_roots = X;
        for (Fe r : X) {
          const Fe x = f.sub(f.mul(red.c, r), red.r);
          w.mapped_roots.push_back(x);
          if (f.quad_char(x) == tx && f.quad_char(f.add(x, a)) == ta) w.surviving.push_back(x);
        }
        if (w.surviving.size() < 3) continue;
        bool ok = true;
        for (Fe x : w.surviving) ok &= f.sub(values[f.add(x, a).v], values[x.v]) == b;
        if (!ok) continue;
        w.ddt_count = ddt_row(f, values, a)[b.v];
        // Square conditions placed on x_0, x_1, x_{-1} themselves.
        if (X.size() >= 3) {
          const Fe x0 = X[0];
          auto x_alpha = [&](Fe alpha) {
            std::uint32_t idx = 1;
            for (std::uint32_t al = 0; al < f.q(); ++al) {
              if (!f.in_subfield(Fe{al}, d)) continue;
              if (Fe{al} == alpha) return X[idx];
              ++idx;
            }
            return X[0];
          };
          const Fe xp = x_alpha(f.one()), xm = x_alpha(f.neg(f.one()));
          bool lit = true;
          for (Fe x : {x0, xp, xm}) {
            lit &= f.quad_char(x) == -1 && f.quad_char(f.add(x, a)) == 1;
          }
          w.literal_system = lit;
        }
        res.witness = w;
        return res;
      }
    }
  }
  return res;
}

}  // namespace apnforge
