#include "apnforge/cases.hpp"

#include <algorithm>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"

namespace apnforge {

std::string case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::kC11: return "C11";
    case CaseTag::kCm1m1: return "C-1-1";
    case CaseTag::kCm11: return "C-11";
    case CaseTag::kC1m1: return "C1-1";
  }
  return "?";
}

namespace {

// F(x) = x^2 (eta(x) + u) for the SQ2 family.
Fe sq2_eval(const Field& f, Fe u, Fe x) {
  return f.mul(f.mul(x, x), f.add(f.from_int(f.quad_char(x)), u));
}

bool solves(const Field& f, Fe u, Fe a, Fe b, Fe x) {
  return f.sub(sq2_eval(f, u, f.add(x, a)), sq2_eval(f, u, x)) == b;
}

void add_candidate(const Field& f, CaseRecord& rec, Fe a, Fe x) {
  for (const auto& c : rec.candidates) {
    if (c.x == x) return;
  }
  Candidate c;
  c.x = x;
  c.eta_x = f.quad_char(x);
  c.eta_xa = f.quad_char(f.add(x, a));
  c.valid = c.eta_x == rec.t_x && c.eta_xa == rec.t_a;
  rec.candidates.push_back(c);
}

}  // namespace

std::uint32_t sq2_solution_count(const Field& field, Fe u, Fe a, Fe b) {
  std::uint32_t n = 0;
  for (std::uint32_t x = 0; x < field.q(); ++x) n += solves(field, u, a, b, Fe{x});
  return n;
}

std::vector<Fe> CaseAnalysis::solutions() const {
  std::vector<Fe> out;
  for (const auto& rec : cases) {
    for (const auto& c : rec.candidates) {
      if (c.valid) out.push_back(c.x);
    }
  }
  for (const auto& b : boundary) {
    if (b.solves) out.push_back(b.x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CaseAnalysis analyze_cases(const Field& f, Fe u, Fe a, Fe b) {
  if (family_excluded_u(f, u)) throw Error(ErrorCode::kDegenerateU, "u must avoid {0, 1, -1}");
  if (a == f.zero()) throw Error(ErrorCode::kZeroShift, "shift a must be nonzero");
  CaseAnalysis out;
  out.u = u;
  out.a = a;
  out.b = b;
  const Fe one = f.one();
  const Fe two = f.from_int(2);
  const Fe up1 = f.add(u, one);
  const Fe um1 = f.sub(u, one);
  const Fe a2 = f.mul(a, a);
  const Fe u2m1 = f.mul(up1, um1);
  const Fe disc_m11 = f.sub(f.mul(a2, u2m1), f.mul(two, b));  // a^2(u^2-1) - 2b
  const Fe disc_1m1 = f.add(f.mul(a2, u2m1), f.mul(two, b));  // a^2(u^2-1) + 2b
  const int eta2 = f.quad_char(two);
  auto eta = [&](Fe x) { return f.quad_char(x); };

  CaseRecord& c11 = out.cases[0];
  c11.tag = CaseTag::kC11;
  c11.t_a = 1;
  c11.t_x = 1;
  add_candidate(f, c11, a, f.div(f.sub(b, f.mul(up1, a2)), f.mul(f.mul(two, a), up1)));
  {
    const Fe beta = f.div(b, f.mul(a2, up1));
    const int l = eta(f.sub(beta, one)), r = eta(f.add(beta, one));
    c11.predicate = l == r && r == eta(f.mul(two, a));
    c11.predicate_corrected = c11.predicate;
  }

  CaseRecord& cmm = out.cases[1];
  cmm.tag = CaseTag::kCm1m1;
  cmm.t_a = -1;
  cmm.t_x = -1;
  add_candidate(f, cmm, a, f.div(f.sub(b, f.mul(um1, a2)), f.mul(f.mul(two, a), um1)));
  {
    const Fe beta = f.div(b, f.mul(a2, um1));
    const int l = eta(f.sub(beta, one)), r = eta(f.add(beta, one));
    cmm.predicate = l == r && r == -eta(f.mul(two, a));
    cmm.predicate_corrected = cmm.predicate;
  }

  const Fe half = f.inv(two);
  CaseRecord& cm1 = out.cases[2];
  cm1.tag = CaseTag::kCm11;
  cm1.t_a = -1;
  cm1.t_x = 1;
  if (auto r = f.sqrt(disc_m11)) {
    const Fe base = f.mul(a, um1);
    add_candidate(f, cm1, a, f.mul(f.add(base, r->first), half));
    add_candidate(f, cm1, a, f.mul(f.sub(base, r->first), half));
  }
  {
    const Fe t1 = f.add(f.div(f.neg(f.mul(two, b)), f.mul(a2, u2m1)), one);
    const Fe t2 = f.sub(f.div(b, f.mul(um1, a2)), one);
    const Fe t3 = f.add(f.div(b, f.mul(up1, a2)), one);
    cm1.predicate = eta(t1) == eta(u2m1) && eta(t2) == eta(um1) && eta(t3) == eta(up1);
    const Fe p2 = f.sub(b, f.mul(um1, a2));  // 2 * x3 * x4
    const Fe p3 = f.add(b, f.mul(up1, a2));  // -2 * (x3+a)(x4+a)
    cm1.predicate_corrected = eta(disc_m11) == 1 && eta2 * eta(p2) == 1 && eta2 * eta(p3) == 1;
  }

  CaseRecord& c1m = out.cases[3];
  c1m.tag = CaseTag::kC1m1;
  c1m.t_a = 1;
  c1m.t_x = -1;
  if (auto r = f.sqrt(disc_1m1)) {
    const Fe base = f.neg(f.mul(a, up1));
    add_candidate(f, c1m, a, f.mul(f.add(base, r->first), half));
    add_candidate(f, c1m, a, f.mul(f.sub(base, r->first), half));
  }
  {
    const Fe t1 = f.add(f.div(f.mul(two, b), f.mul(a2, u2m1)), one);
    const Fe t2 = f.sub(f.div(f.neg(b), f.mul(um1, a2)), one);
    const Fe t3 = f.add(f.div(f.neg(b), f.mul(up1, a2)), one);
    c1m.predicate = eta(t1) == eta(u2m1) && eta(t2) == eta(um1) && eta(t3) == eta(up1);
    const Fe p2 = f.sub(f.mul(up1, a2), b);           // 2 * x3 * x4
    const Fe p3 = f.neg(f.add(b, f.mul(um1, a2)));    // 2 * (x3+a)(x4+a)
    c1m.predicate_corrected = eta(disc_1m1) == 1 && eta2 * eta(p2) == 1 && eta2 * eta(p3) == 1;
  }

  for (auto& rec : out.cases) {
    rec.valid_count = static_cast<std::uint32_t>(
        std::count_if(rec.candidates.begin(), rec.candidates.end(), [](const Candidate& c) { return c.valid; }));
    out.case_total += rec.valid_count;
  }
  for (Fe x : {f.zero(), f.neg(a)}) {
    BoundaryRecord r{x, solves(f, u, a, b, x)};
    out.boundary.push_back(r);
    out.predicted_total += r.solves;
  }
  out.predicted_total += out.case_total;
  return out;
}

UMinus3Summary u_minus3_summary(const Field& field) {
  if (field.q() % 8 != 5) throw Error(ErrorCode::kWrongResidueClass, "q must be 5 mod 8");
  const Fe u = field.from_int(-3);
  UMinus3Summary s;
  const std::uint64_t weight = (field.q() - 1) / 2;
  for (Fe a : {field.one(), field.first_nonsquare()}) {
    for (std::uint32_t bi = 0; bi < field.q(); ++bi) {
      const auto ca = analyze_cases(field, u, a, Fe{bi});
      s.histogram[ca.predicted_total] += weight;
      if (ca.predicted_total > s.max) {
        s.max = ca.predicted_total;
        s.argmax_a = a;
        s.argmax_b = Fe{bi};
      }
    }
  }
  return s;
}

std::optional<System2Witness> find_system2_witness(const Field& f, Fe u, std::optional<Fe> xi_opt,
                                                   System2Options options) {
  const Fe three = f.from_int(3);
  if (family_excluded_u(f, u) || (u == three && !options.allow_u3)) {
    throw Error(ErrorCode::kDegenerateU, "u must avoid {0, 1, -1, 3}");
  }
  const Fe xi = xi_opt.value_or(f.first_nonsquare());
  if (f.quad_char(xi) != -1) throw Error(ErrorCode::kNonsquareXiRequired, "xi must be a nonsquare");
  const Fe one = f.one();
  const Fe up1 = f.add(u, one);
  const Fe xi2 = f.mul(xi, xi);
  for (std::uint32_t ai = 1; ai < f.q(); ++ai) {
    const Fe a = Fe{ai};
    const Fe au1 = f.mul(a, up1);
    if (f.quad_char(au1) != 1) continue;
    const Fe s = f.sqrt(au1)->first;
    const Fe inv_au1 = f.inv(au1);
    const Fe au = f.mul(a, u);
    // Only aZ != 0 is required; X, T, U, V, W may vanish.
    for (std::uint32_t wi = 0; wi < f.q(); ++wi) {
      const Fe W{wi};
      const Fe w2 = f.mul(W, W);
      const Fe xw2 = f.mul(xi, w2);
      const Fe Z = f.sub(f.add(xw2, xw2), au1);
      if (Z == f.zero()) continue;
      const Fe X2 = f.sub(f.sub(xw2, f.mul(f.mul(xi2, f.mul(w2, w2)), inv_au1)), a);
      if (f.quad_char(X2) == -1) continue;
      const Fe T2 = f.sub(f.mul(au1, f.inv(xi)), w2);
      if (f.quad_char(T2) == -1) continue;
      const Fe U2 = f.sub(xw2, a);
      if (f.quad_char(U2) == -1) continue;
      const Fe V2 = f.sub(au, xw2);
      if (f.quad_char(V2) == -1) continue;
      const Fe b = f.mul(au1, f.add(f.add(X2, X2), a));
      if (f.add(b, f.mul(f.mul(a, a), up1)) == f.zero()) continue;
      System2Witness w;
      w.u = u;
      w.xi = xi;
      w.a = a;
      w.b = b;
      w.W = W;
      w.Z = Z;
      w.X = f.sqrt(X2)->first;
      w.T = f.sqrt(T2)->first;
      w.U = f.sqrt(U2)->first;
      w.V = f.sqrt(V2)->first;
      w.Y = f.mul(f.div(xi, s), f.mul(w.T, W));
      w.roots = {X2, U2, V2};
      w.u3_relaxed = u == three;
      w.tests = {
          {"a(u+1)", au1, f.quad_char(au1)},
          {"xi", xi, f.quad_char(xi)},
          {"Z", Z, f.quad_char(Z)},
          {"X^2", X2, f.quad_char(X2)},
          {"T^2", T2, f.quad_char(T2)},
          {"U^2", U2, f.quad_char(U2)},
          {"V^2", V2, f.quad_char(V2)},
          {"Y^2", f.add(a, X2), f.quad_char(f.add(a, X2))},
          {"b+a^2(u+1)", f.add(b, f.mul(f.mul(a, a), up1)), f.quad_char(f.add(b, f.mul(f.mul(a, a), up1)))},
      };
      if (verify_system2(f, w)) return w;
    }
  }
  return std::nullopt;
}

bool verify_system2(const Field& f, const System2Witness& w) {
  const Fe one = f.one();
  const Fe two = f.from_int(2);
  const Fe up1 = f.add(w.u, one);
  const Fe au1 = f.mul(w.a, up1);
  const Fe two_xi = f.mul(two, w.xi);
  auto sq = [&](Fe x) { return f.mul(x, x); };
  const Fe X2 = sq(w.X);
  bool ok = true;
  ok &= sq(w.Z) == f.mul(au1, f.sub(f.mul(f.sub(w.u, f.from_int(3)), w.a), f.mul(f.from_int(4), X2)));
  ok &= sq(w.W) == f.add(f.div(au1, two_xi), f.div(w.Z, two_xi));
  ok &= sq(w.T) == f.sub(f.div(au1, two_xi), f.div(w.Z, two_xi));
  ok &= sq(w.Y) == f.div(f.mul(sq(w.xi), f.mul(sq(w.T), sq(w.W))), au1);
  ok &= sq(w.Y) == f.add(w.a, X2);
  const Fe half_um1_a = f.div(f.mul(f.sub(w.u, one), w.a), two);
  ok &= sq(w.U) == f.add(half_um1_a, f.div(w.Z, two));
  ok &= sq(w.V) == f.sub(half_um1_a, f.div(w.Z, two));
  ok &= w.b == f.mul(au1, f.add(f.add(X2, X2), w.a));
  ok &= f.quad_char(au1) == 1 && f.quad_char(w.xi) == -1;
  ok &= w.Z != f.zero() && f.add(w.b, f.mul(f.mul(w.a, w.a), up1)) != f.zero();
  ok &= w.roots[0] != w.roots[1] && w.roots[0] != w.roots[2] && w.roots[1] != w.roots[2];
  for (Fe r : w.roots) ok &= solves(f, w.u, w.a, w.b, r);
  return ok;
}

std::string u3_route_name(U3Route route) {
  switch (route) {
    case U3Route::kResidueRule: return "residue-rule";
    case U3Route::kSystem2: return "system2";
    case U3Route::kScanFallback: return "scan-fallback";
  }
  return "?";
}

std::optional<U3BranchResult> u3_branch_witness(const Field& f) {
  if (f.p() == 3) throw Error(ErrorCode::kDegenerateU, "u = 3 vanishes in characteristic 3");
  const Fe u = f.from_int(3);
  const std::uint32_t p24 = f.p() % 24;
  const bool q1mod4 = f.q() % 4 == 1;

  struct Rule {
    std::string text;
    int eta_a;
    int b_sign;  // b = b_sign * 4 a^2
  };
  std::optional<Rule> rule;
  if (f.n() % 2 == 0) {
    rule = Rule{"n even: eta(a)=1, b=-4a^2", 1, -1};
  } else if (!q1mod4) {
    if (p24 == 11) rule = Rule{"p=11 mod 24: eta(a)=-1, b=-4a^2", -1, -1};
    if (p24 == 19) rule = Rule{"p=19 mod 24: eta(a)=1, b=4a^2", 1, 1};
    if (p24 == 23) rule = Rule{"p=23 mod 24: eta(a)=1, b=-4a^2", 1, -1};
  }

  U3BranchResult out;
  if (rule) {
    out.rule = rule->text;
    const Fe a = rule->eta_a == 1 ? f.one() : f.first_nonsquare();
    const Fe four_a2 = f.mul(f.from_int(4), f.mul(a, a));
    const Fe b = rule->b_sign == 1 ? four_a2 : f.neg(four_a2);
    const std::uint32_t count = sq2_solution_count(f, u, a, b);
    out.a = a;
    out.b = b;
    out.count = count;
    if (count >= 3) {
      out.route = U3Route::kResidueRule;
      out.rule_held = true;
      return out;
    }
  } else {
    out.rule = q1mod4 ? "q=1 mod 4: System (2) with u=3" : "no residue rule for this class";
  }

  if (q1mod4) {
    if (auto w = find_system2_witness(f, u, std::nullopt, System2Options{true})) {
      out.route = U3Route::kSystem2;
      out.a = w->a;
      out.b = w->b;
      out.count = sq2_solution_count(f, u, w->a, w->b);
      out.system2 = w;
      return out;
    }
  }

  // Rows a = 1 and a = xi represent every shift up to square scaling.
  const SparsePoly F = make_family(f, FamilyParams{Family::kSq2, u});
  const auto values = F.values(f);
  for (Fe a : {f.one(), f.first_nonsquare()}) {
    const auto row = ddt_row(f, values, a);
    for (std::uint32_t bi = 0; bi < f.q(); ++bi) {
      if (row[bi] >= 3) {
        out.route = U3Route::kScanFallback;
        out.a = a;
        out.b = Fe{bi};
        out.count = row[bi];
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace apnforge
