#include "json_io.hpp"

#include "apnforge/error.hpp"

namespace apnforge::cli {

json field_json(const Field& F) {
  return {{"descriptor", F.descriptor()}, {"p", F.p()}, {"n", F.n()}, {"q", F.q()},
          {"generator", F.generator().v}};
}

json fe_json(const Field& F, Fe x) { return {{"index", x.v}, {"label", F.describe(x)}}; }

json spectrum_json(const Spectrum& s) {
  json cells = json::array();
  for (auto [v, c] : s) cells.push_back({v, c});
  return {{"text", format_spectrum(s)}, {"cells", cells}};
}

json witness_json(const Field& F, const ApnWitness& w) {
  return {{"a", fe_json(F, w.a)}, {"b", fe_json(F, w.b)}, {"count", w.count}};
}

json report_json(const Field& F, const SpectrumReport& r) {
  return {{"spectrum", spectrum_json(r.freq)},
          {"du", r.du},
          {"verdict", verdict_string(r.du)},
          {"method", std::string(method_name(r.method))},
          {"witness", {{"a", fe_json(F, r.witness.a)}, {"b", fe_json(F, r.witness.b)}}}};
}

json sweep_entry_json(const Field& F, const SweepEntry& e) {
  json j = {{"u", fe_json(F, e.u)}};
  j["verdict"] = e.verdict == Verdict::kPN ? "PN" : e.verdict == Verdict::kAPN ? "APN" : "DU";
  j["du"] = e.du ? json(*e.du) : json(nullptr);
  if (e.spectrum) j["spectrum"] = format_spectrum(*e.spectrum);
  j["witness"] = e.witness ? witness_json(F, *e.witness) : json(nullptr);
  return j;
}

json case_analysis_json(const Field& F, const CaseAnalysis& c) {
  json cases = json::array();
  for (const auto& cr : c.cases) {
    json cands = json::array();
    for (const auto& cd : cr.candidates)
      cands.push_back({{"x", fe_json(F, cd.x)}, {"eta_x", cd.eta_x}, {"eta_x_plus_a", cd.eta_xa}, {"valid", cd.valid}});
    cases.push_back({{"case", case_name(cr.tag)},
                     {"t_a", cr.t_a},
                     {"t_x", cr.t_x},
                     {"candidates", cands},
                     {"predicate_printed", cr.predicate},
                     {"predicate_corrected", cr.predicate_corrected},
                     {"valid", cr.valid_count}});
  }
  json boundary = json::array();
  for (const auto& b : c.boundary) boundary.push_back({{"x", fe_json(F, b.x)}, {"solves", b.solves}});
  json sols = json::array();
  for (Fe x : c.solutions()) sols.push_back(fe_json(F, x));
  return {{"u", fe_json(F, c.u)},     {"a", fe_json(F, c.a)},           {"b", fe_json(F, c.b)},
          {"cases", cases},           {"boundary", boundary},           {"case_total", c.case_total},
          {"predicted_total", c.predicted_total}, {"solutions", sols}};
}

json system2_json(const Field& F, const System2Witness& w) {
  json tests = json::array();
  for (const auto& t : w.tests) tests.push_back({{"name", t.name}, {"value", fe_json(F, t.value)}, {"eta", t.eta}});
  json roots = json::array();
  for (Fe r : w.roots) roots.push_back(fe_json(F, r));
  return {{"u", fe_json(F, w.u)}, {"xi", fe_json(F, w.xi)}, {"a", fe_json(F, w.a)}, {"b", fe_json(F, w.b)},
          {"X", fe_json(F, w.X)}, {"Y", fe_json(F, w.Y)},   {"Z", fe_json(F, w.Z)}, {"U", fe_json(F, w.U)},
          {"V", fe_json(F, w.V)}, {"W", fe_json(F, w.W)},   {"T", fe_json(F, w.T)}, {"roots", roots},
          {"square_tests", tests}, {"u3_relaxed", w.u3_relaxed}, {"verified", verify_system2(F, w)}};
}

json u3_json(const Field& F, const U3BranchResult& r) {
  json j = {{"route", u3_route_name(r.route)}, {"rule", r.rule},   {"rule_held", r.rule_held},
            {"a", fe_json(F, r.a)},            {"b", fe_json(F, r.b)}, {"count", r.count}};
  if (r.system2) j["system2"] = system2_json(F, *r.system2);
  return j;
}

json kim_witness_json(const Field& F, const KimWitness& w) {
  auto list = [&](const std::vector<Fe>& xs) {
    json a = json::array();
    for (Fe x : xs) a.push_back(fe_json(F, x));
    return a;
  };
  return {{"U", fe_json(F, w.U)},
          {"A", fe_json(F, w.A)},
          {"a", fe_json(F, w.a)},
          {"b", fe_json(F, w.b)},
          {"xi", fe_json(F, w.xi)},
          {"case", dcase_name(w.tag)},
          {"normalized_roots", list(w.normalized_roots)},
          {"mapped_roots", list(w.mapped_roots)},
          {"surviving", list(w.surviving)},
          {"literal_system", w.literal_system},
          {"ddt_count", w.ddt_count}};
}

json cubic_roots_json(const Field& F, const CubicRoots& r) {
  json roots = json::array();
  for (Fe x : r.roots) roots.push_back(fe_json(F, x));
  json j = {{"path", cubic_path_name(r.path)},
            {"roots", roots},
            {"hessian_square", r.hessian_square},
            {"ratio_cube", r.ratio_cube},
            {"discriminant_nonzero", r.discriminant_nonzero}};
  if (r.beta) j["beta"] = {fe_json(F, (*r.beta)[0]), fe_json(F, (*r.beta)[1])};
  if (r.e) j["e"] = fe_json(F, *r.e);
  return j;
}

json claim_json(const ClaimCheck& c) { return {{"claim", c.claim}, {"holds", c.holds}, {"observed", c.observed}}; }

json cube3_report_json(const Field& F, const Cube3Report& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"u", fe_json(F, e.u)},
                       {"excluded", e.excluded},
                       {"du", e.du},
                       {"verdict", verdict_string(e.du)},
                       {"spectrum", format_spectrum(e.spectrum)}});
  json apn = json::array();
  for (Fe u : r.apn_u) apn.push_back(fe_json(F, u));
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(claim_json(c));
  return {{"field", field_json(F)}, {"entries", entries}, {"apn_u", apn}, {"du_values", r.du_values}, {"claims", claims}};
}

json table_check_json(const TableCheck& t) {
  json rows = json::array();
  for (const auto& rc : t.rows) {
    json j = {{"line", rc.row.line},
              {"p", rc.row.p},
              {"n", rc.row.n},
              {"u_label", rc.row.u_label},
              {"field", rc.field},
              {"u_index", rc.u.v},
              {"expected", format_spectrum(rc.expected)},
              {"body", format_spectrum(rc.body)},
              {"match", row_match_name(rc.match)},
              {"pass", rc.pass}};
    if (rc.caption) {
      j["caption"] = format_spectrum(*rc.caption);
      j["caption_matches"] = rc.caption_matches;
    }
    if (!rc.restrictions.empty()) {
      json rs = json::array();
      for (const auto& r : rc.restrictions)
        rs.push_back({{"hypothesis", r.hypothesis}, {"spectrum", format_spectrum(r.spectrum)}, {"matches", r.matches}});
      j["restrictions"] = rs;
    }
    rows.push_back(j);
  }
  return {{"table", t.table},
          {"pass", t.pass},
          {"rows", t.rows.size()},
          {"body_matches", t.body_matches},
          {"caption_matches", t.caption_matches},
          {"detail", rows}};
}

json threshold_json(const ThresholdResult& t) {
  return {{"genus", t.g},
          {"excluded", t.B},
          {"q0_exact", t.q0_exact},
          {"q0_printed", t.q0_printed},
          {"predecessor", t.predecessor},
          {"exact_at_q0", threshold_predicate_exact(t.g, t.B, t.q0_exact)},
          {"exact_at_predecessor", threshold_predicate_exact(t.g, t.B, t.predecessor)}};
}

json datum_json(const RamificationDatum& d) {
  json places = json::array();
  for (const auto& p : d.places) places.push_back({{"degree", p.degree}, {"r", p.r}});
  json j = {{"n", d.n}, {"base_genus", d.base_genus}, {"places", places}};
  if (!d.label.empty()) j["label"] = d.label;
  return j;
}

RamificationDatum datum_from_json(const json& j) {
  RamificationDatum d;
  try {
    d.n = j.at("n").get<std::uint32_t>();
    d.base_genus = j.at("base_genus").get<std::int64_t>();
    for (const auto& p : j.at("places")) d.places.push_back({p.at("degree").get<std::uint64_t>(), p.at("r").get<std::uint32_t>()});
    if (j.contains("label")) d.label = j.at("label").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("bad ramification datum: ") + e.what());
  }
  return d;
}

}  // namespace apnforge::cli
