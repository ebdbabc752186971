#include "apnforge/cubic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "apnforge/error.hpp"

namespace apnforge {

namespace {

void require_char_gt3(const Field& F) {
  if (F.p() == 3) throw Error(ErrorCode::kWrongResidueClass, "characteristic 3 has no Hessian normal form");
}

Fe c(const Field& F, std::int64_t v) { return F.from_int(v); }

std::string join_fe(const Field& F, const std::vector<Fe>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << F.describe(xs[i]);
  os << "}";
  return os.str();
}

std::string join_u32(const std::vector<std::uint32_t>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  os << "}";
  return os.str();
}

}  // namespace

Fe eval_cubic(const Field& F, const MonicCubic& g, Fe x) {
  Fe r = F.add(x, g.B);
  r = F.add(F.mul(r, x), g.C);
  return F.add(F.mul(r, x), g.D);
}

Fe cubic_discriminant(const Field& F, const MonicCubic& g) {
  const Fe B = g.B, C = g.C, D = g.D;
  const Fe B2 = F.mul(B, B), C2 = F.mul(C, C);
  Fe r = F.mul(B2, C2);
  r = F.sub(r, F.mul(c(F, 4), F.mul(C2, C)));
  r = F.sub(r, F.mul(c(F, 4), F.mul(F.mul(B2, B), D)));
  r = F.sub(r, F.mul(c(F, 27), F.mul(D, D)));
  r = F.add(r, F.mul(c(F, 18), F.mul(F.mul(B, C), D)));
  return r;
}

std::array<Fe, 3> hessian_of(const Field& F, const MonicCubic& g) {
  const Fe B = g.B, C = g.C, D = g.D;
  return {F.sub(F.mul(B, B), F.mul(c(F, 3), C)), F.sub(F.mul(B, C), F.mul(c(F, 9), D)),
          F.sub(F.mul(C, C), F.mul(c(F, 3), F.mul(B, D)))};
}

MonicCubic cube3_case_cubic(const Field& F, Fe u, Fe a, Fe b, int eps) {
  require_char_gt3(F);
  const Fe e = c(F, eps);
  const Fe ue = F.add(u, e);
  const Fe inv2e = F.inv(F.mul(c(F, 2), e));
  const Fe a2 = F.mul(a, a);
  MonicCubic g;
  g.B = F.mul(F.mul(c(F, 3), F.mul(a, ue)), inv2e);
  g.C = F.mul(F.mul(c(F, 3), F.mul(a2, ue)), inv2e);
  g.D = F.mul(F.sub(F.mul(F.mul(a2, a), ue), b), inv2e);
  return g;
}

HessianData hessian_data(const Field& F, Fe u, Fe a, Fe b) {
  require_char_gt3(F);
  const Fe one = F.one();
  const Fe u2 = F.mul(u, u);
  const Fe a2 = F.mul(a, a), a3 = F.mul(a2, a), a6 = F.mul(a3, a3);
  if (F.mul(a2, F.sub(one, u2)) == F.zero())
    throw Error(ErrorCode::kDegenerateHessian, "a^2(1-u^2) = 0");
  const Fe m94 = F.neg(F.div(c(F, 9), c(F, 4)));
  HessianData h;
  h.H[0] = F.mul(m94, F.sub(a2, F.mul(a2, u2)));
  h.H[1] = F.mul(m94, F.sub(F.sub(a3, F.mul(a3, u2)), F.mul(c(F, 2), b)));
  h.H[2] = F.mul(m94, F.neg(F.add(F.mul(F.mul(a, b), u), F.mul(a, b))));
  Fe d = F.mul(a6, F.mul(u2, u2));
  d = F.sub(d, F.mul(c(F, 2), F.mul(a6, u2)));
  d = F.add(d, a6);
  d = F.sub(d, F.mul(c(F, 4), F.mul(F.mul(a3, b), F.mul(u2, u))));
  d = F.add(d, F.mul(c(F, 4), F.mul(F.mul(a3, b), u)));
  d = F.add(d, F.mul(c(F, 4), F.mul(b, b)));
  h.delta = F.mul(F.div(c(F, 81), c(F, 16)), d);
  h.discriminant_of_H = F.sub(F.mul(h.H[1], h.H[1]), F.mul(c(F, 4), F.mul(h.H[0], h.H[2])));
  h.hessian_G = hessian_of(F, cube3_case_cubic(F, u, a, b, 1));
  return h;
}

std::string cubic_path_name(CubicPath p) {
  switch (p) {
    case CubicPath::kFormula: return "formula";
    case CubicPath::kPureCubic: return "pure-cubic";
    case CubicPath::kEnumeration: return "enumeration";
  }
  return "?";
}

Fe primitive_cube_root_of_unity(const Field& F) {
  if ((F.q() - 1) % 3 != 0) throw Error(ErrorCode::kWrongResidueClass, "q != 1 mod 3");
  return F.gen_pow((F.q() - 1) / 3);
}

std::optional<Fe> cube_root(const Field& F, Fe x) {
  if (x == F.zero()) return F.zero();
  const std::uint64_t m = F.q() - 1;
  if (m % 3 != 0) {
    // Cubing is a bijection; invert 3 modulo q-1.
    std::uint64_t t = 1;
    while ((3 * t) % m != 1) ++t;
    return F.pow(x, t);
  }
  if (F.pow(x, m / 3) != F.one()) return std::nullopt;
  const std::uint64_t l = *F.log(x);
  const Fe e = F.gen_pow(l / 3);
  if (F.mul(F.mul(e, e), e) != x) throw Error(ErrorCode::kInvalidArgument, "cube root check failed");
  return e;
}

std::vector<Fe> cubic_roots_brute(const Field& F, const MonicCubic& g) {
  const Fe two = c(F, 2), three = c(F, 3), six = c(F, 6);
  std::vector<Fe> out;
  for (std::uint32_t i = 0; i < F.q(); ++i) {
    const Fe x = F.element(i);
    if (eval_cubic(F, g, x) != F.zero()) continue;
    // G' = 3x^2 + 2Bx + C, G'' = 6x + 2B.
    const Fe d1 = F.add(F.add(F.mul(three, F.mul(x, x)), F.mul(two, F.mul(g.B, x))), g.C);
    const Fe d2 = F.add(F.mul(six, x), F.mul(two, g.B));
    int mult = 1;
    if (d1 == F.zero()) mult = (F.p() > 3 && d2 == F.zero()) ? 3 : 2;
    for (int m = 0; m < mult; ++m) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubicRoots solve_cubic(const Field& F, const MonicCubic& g) {
  require_char_gt3(F);
  if ((F.q() - 1) % 3 != 0) throw Error(ErrorCode::kWrongResidueClass, "q != 1 mod 3");
  CubicRoots res;
  res.discriminant_nonzero = cubic_discriminant(F, g) != F.zero();
  const auto H = hessian_of(F, g);
  if (H[0] == F.zero()) {
    // G = (x + B/3)^3 + (D - B^3/27).
    const Fe s = F.div(g.B, c(F, 3));
    const Fe cc = F.sub(F.mul(F.mul(s, s), s), g.D);
    if (cc == F.zero()) {
      res.roots = {F.neg(s), F.neg(s), F.neg(s)};
    } else if (auto y = cube_root(F, cc)) {
      const Fe w = primitive_cube_root_of_unity(F);
      Fe yi = *y;
      for (int i = 0; i < 3; ++i, yi = F.mul(yi, w)) res.roots.push_back(F.sub(yi, s));
    }
    std::sort(res.roots.begin(), res.roots.end());
    res.path = CubicPath::kPureCubic;
    return res;
  }
  const Fe dh = F.sub(F.mul(H[1], H[1]), F.mul(c(F, 4), F.mul(H[0], H[2])));
  res.hessian_square = dh != F.zero() && F.is_square(dh);
  if (res.hessian_square) {
    const auto sq = F.sqrt(dh);
    const Fe inv2a = F.inv(F.mul(c(F, 2), H[0]));
    const Fe b1 = F.mul(F.sub(sq->first, H[1]), inv2a);
    const Fe b2 = F.mul(F.sub(F.neg(sq->first), H[1]), inv2a);
    res.beta = std::array<Fe, 2>{b1, b2};
    const Fe g1 = eval_cubic(F, g, b1), g2 = eval_cubic(F, g, b2);
    if (g2 != F.zero()) {
      const Fe ratio = F.div(g1, g2);
      auto e = cube_root(F, ratio);
      res.ratio_cube = e.has_value();
      if (e && res.discriminant_nonzero && *e != F.zero()) {
        res.e = *e;
        const Fe w = primitive_cube_root_of_unity(F);
        Fe ew = *e;
        bool ok = true;
        std::vector<Fe> xs;
        for (int i = 0; i < 3; ++i, ew = F.mul(ew, w)) {
          if (ew == F.one()) { ok = false; break; }
          xs.push_back(F.div(F.sub(F.mul(b2, ew), b1), F.sub(ew, F.one())));
        }
        if (ok) {
          for (Fe x : xs)
            if (eval_cubic(F, g, x) != F.zero())
              throw Error(ErrorCode::kInvalidArgument, "Hessian root formula produced a non-root");
          std::sort(xs.begin(), xs.end());
          res.roots = xs;
          res.path = CubicPath::kFormula;
          return res;
        }
      }
    }
  }
  res.roots = cubic_roots_brute(F, g);
  res.path = CubicPath::kEnumeration;
  return res;
}

Fe cube_ratio(const Field& F, Fe u, Fe a, Fe b, Fe X) {
  const Fe a3 = F.mul(F.mul(a, a), a);
  const Fe base = F.sub(F.sub(F.mul(a3, F.mul(F.mul(u, u), u)), F.mul(a3, u)), F.mul(c(F, 2), b));
  const Fe x49 = F.div(F.mul(c(F, 4), X), c(F, 9));
  const Fe den = F.add(base, x49);
  if (den == F.zero()) throw Error(ErrorCode::kZeroDenominator, "cube ratio denominator vanishes");
  return F.div(F.sub(base, x49), den);
}

std::array<Fe, 2> hessian_roots_from_X(const Field& F, Fe u, Fe a, Fe b, Fe X) {
  const Fe a2 = F.mul(a, a), a3 = F.mul(a2, a);
  const Fe den = F.mul(c(F, 2), F.mul(a2, F.sub(F.one(), F.mul(u, u))));
  if (den == F.zero()) throw Error(ErrorCode::kDegenerateHessian, "a^2(1-u^2) = 0");
  const Fe base = F.add(F.sub(F.mul(a3, F.mul(u, u)), a3), F.mul(c(F, 2), b));
  const Fe x49 = F.div(F.mul(c(F, 4), X), c(F, 9));
  return {F.div(F.add(base, x49), den), F.div(F.sub(base, x49), den)};
}

bool is_perm_cubic(const Field& F, Fe a3, Fe b2, Fe c1, Fe) {
  if (a3 == F.zero()) throw Error(ErrorCode::kInvalidArgument, "leading coefficient is zero");
  if (F.p() == 3) throw Error(ErrorCode::kInvalidArgument, "criterion needs characteristic other than 3");
  return F.q() % 3 == 2 && F.mul(b2, b2) == F.mul(c(F, 3), F.mul(a3, c1));
}

namespace {

struct ProseClaimCtx {
  const Field& F;
  const Cube3Report& rep;

  std::vector<std::uint32_t> du_values() const { return rep.du_values; }
  std::vector<Fe> apn_restricted() const {
    std::vector<Fe> out;
    for (const auto& e : rep.entries)
      if (!e.excluded && e.du == 2) out.push_back(e.u);
    return out;
  }
  std::set<std::uint32_t> du_of_non(std::span<const Fe> us) const {
    std::set<std::uint32_t> out;
    for (const auto& e : rep.entries)
      if (!e.excluded && std::find(us.begin(), us.end(), e.u) == us.end()) out.insert(e.du);
    return out;
  }
};

ClaimCheck du_set_claim(const ProseClaimCtx& ctx, std::vector<std::uint32_t> claimed) {
  ClaimCheck cc;
  cc.claim = "DU values " + join_u32(claimed);
  cc.observed = join_u32(ctx.du_values());
  cc.holds = ctx.du_values() == claimed;
  return cc;
}

ClaimCheck apn_set_claim(const ProseClaimCtx& ctx, std::vector<Fe> claimed, bool all_nonzero) {
  std::sort(claimed.begin(), claimed.end());
  const std::vector<Fe> obs = all_nonzero ? ctx.rep.apn_u : ctx.apn_restricted();
  ClaimCheck cc;
  cc.claim = std::string("APN exactly for u in ") + join_fe(ctx.F, claimed) +
             (all_nonzero ? " (u != 0)" : " (u != 0, +-1)");
  cc.observed = join_fe(ctx.F, obs);
  cc.holds = obs == claimed;
  return cc;
}

ClaimCheck others_du_claim(const ProseClaimCtx& ctx, const std::vector<Fe>& special, std::uint32_t du,
                           const std::string& label) {
  const auto s = ctx.du_of_non(special);
  ClaimCheck cc;
  cc.claim = label;
  cc.observed = join_u32(std::vector<std::uint32_t>(s.begin(), s.end()));
  cc.holds = s.size() == 1 && *s.begin() == du;
  return cc;
}

}  // namespace

Cube3Report cube3_family_report(const Field& F) {
  Cube3Report rep;
  std::set<std::uint32_t> dus;
  for (std::uint32_t i = 1; i < F.q(); ++i) {
    Cube3Entry e;
    e.u = F.element(i);
    e.excluded = family_excluded_u(F, e.u);
    const auto s = spectrum(F, make_family(F, {Family::kCube3, e.u, 0, 0}));
    e.du = s.du;
    e.spectrum = s.freq;
    if (e.du == 2) rep.apn_u.push_back(e.u);
    if (!e.excluded) dus.insert(e.du);
    rep.entries.push_back(std::move(e));
  }
  std::sort(rep.apn_u.begin(), rep.apn_u.end());
  rep.du_values.assign(dus.begin(), dus.end());

  const ProseClaimCtx ctx{F, rep};
  auto I = [&](std::int64_t v) { return F.from_int(v); };
  auto G = [&](std::uint64_t k) { return F.gen_pow(k); };
  const std::uint32_t p = F.p(), n = F.n();
  if (p == 5 && n == 1) {
    const std::vector<Fe> apn{I(1), I(2), I(3)};
    rep.claims.push_back(apn_set_claim(ctx, apn, true));
    std::set<std::uint32_t> rest;
    for (const auto& e : rep.entries)
      if (std::find(apn.begin(), apn.end(), e.u) == apn.end()) rest.insert(e.du);
    ClaimCheck cc;
    cc.claim = "DU 3 for every other nonzero u";
    cc.observed = join_u32(std::vector<std::uint32_t>(rest.begin(), rest.end()));
    cc.holds = rest.size() == 1 && *rest.begin() == 3;
    rep.claims.push_back(cc);
  } else if (p == 5 && n == 2) {
    const std::vector<Fe> bad{G(4), G(8), G(16), G(20)};
    std::vector<Fe> apn;
    for (const auto& e : rep.entries)
      if (!e.excluded && std::find(bad.begin(), bad.end(), e.u) == bad.end()) apn.push_back(e.u);
    rep.claims.push_back(apn_set_claim(ctx, apn, false));
    ClaimCheck cc;
    cc.claim = "DU 9 for u in {g^4, g^8, g^16, g^20}";
    std::set<std::uint32_t> got;
    for (const auto& e : rep.entries)
      if (std::find(bad.begin(), bad.end(), e.u) != bad.end()) got.insert(e.du);
    cc.observed = join_u32(std::vector<std::uint32_t>(got.begin(), got.end()));
    cc.holds = got.size() == 1 && *got.begin() == 9;
    rep.claims.push_back(cc);
  } else if (p == 5 && n == 3) {
    rep.claims.push_back(du_set_claim(ctx, {3, 4, 6, 7, 8}));
  } else if (p == 7 && n == 1) {
    rep.claims.push_back(du_set_claim(ctx, {2, 3}));
    rep.claims.push_back(apn_set_claim(ctx, {I(2), I(3)}, false));
  } else if (p == 7 && n == 2) {
    rep.claims.push_back(du_set_claim(ctx, {4, 6}));
    rep.claims.push_back(du_set_claim(ctx, {3, 4, 5}));
  } else if (p == 11 && n == 1) {
    const std::vector<Fe> apn{I(3), I(8)};
    rep.claims.push_back(apn_set_claim(ctx, apn, false));
    rep.claims.push_back(others_du_claim(ctx, apn, 3, "DU 3 for every other u"));
  } else if (p == 11 && n == 2) {
    rep.claims.push_back(du_set_claim(ctx, {4, 5, 6, 8}));
  } else if (p == 13 && n == 1) {
    rep.claims.push_back(du_set_claim(ctx, {2, 3}));
    rep.claims.push_back(apn_set_claim(ctx, {I(2), I(4), I(6)}, false));
    rep.claims.push_back(apn_set_claim(ctx, {I(2), I(11)}, false));
  }
  return rep;
}

std::optional<Cube3Probe> cube3_three_root_probe(const Field& F, Fe u) {
  require_char_gt3(F);
  if ((F.q() - 1) % 3 != 0) throw Error(ErrorCode::kWrongResidueClass, "q != 1 mod 3");
  const auto f = make_family(F, {Family::kCube3, u, 0, 0});
  for (Fe a : {F.one(), F.first_nonsquare()}) {
    for (int eps : {1, -1}) {
      if (F.add(u, c(F, eps)) == F.zero()) continue;
      for (std::uint32_t bi = 0; bi < F.q(); ++bi) {
        const Fe b = F.element(bi);
        const auto sol = solve_cubic(F, cube3_case_cubic(F, u, a, b, eps));
        if (sol.roots.size() != 3 || sol.roots[0] == sol.roots[1] || sol.roots[1] == sol.roots[2])
          continue;
        bool ok = true;
        for (Fe x : sol.roots)
          if (F.quad_char(F.add(x, a)) != eps || F.quad_char(x) != -eps) ok = false;
        if (!ok) continue;
        Cube3Probe pr;
        pr.a = a;
        pr.b = b;
        pr.eps = eps;
        std::copy(sol.roots.begin(), sol.roots.end(), pr.roots.begin());
        for (std::uint32_t xi = 0; xi < F.q(); ++xi) {
          const Fe x = F.element(xi);
          if (F.sub(f.eval(F, F.add(x, a)), f.eval(F, x)) == b) ++pr.direct_count;
        }
        return pr;
      }
    }
  }
  return std::nullopt;
}

}  // namespace apnforge
