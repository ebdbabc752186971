#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "apnforge/error.hpp"
#include "fixtures.hpp"
#include "json_io.hpp"
#include "runs.hpp"

namespace apnforge::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string field;
  bool json_out = false;
};

struct SpectrumOpts {
  std::string field, family = "sq2", u, method = "auto";
  std::uint32_t j = 0, k = 0;
  bool json_out = false, csv_out = false, caption = false;
};

struct SweepOpts {
  std::string field, family = "sq2", out;
  std::uint32_t j = 0, k = 0;
  bool early_exit = false, json_out = false;
};

struct TablesOpts {
  int table = 0;
  std::string fixture, out;
  bool json_out = false;
};

struct CasesOpts {
  std::string field, u, a, b;
  bool json_out = false;
};

struct WitnessOpts {
  std::string field, u, xi;
  bool json_out = false;
};

struct CharsumOpts {
  std::string field, u, a = "1", b = "0";
  std::uint32_t j = 0, k = 1;
  int eps = 1, mu = 1;
  bool bench = false, json_out = false;
  int reps = 3;
};

struct KimOpts {
  std::string field, u, solve_A, from_U, xi;
  std::uint32_t k = 1;
  bool json_out = false;
};

struct CubicOpts {
  std::string field, coeffs, u = "all";
  bool json_out = false;
};

struct GenusOpts {
  std::string steps, derive, write;
  std::uint32_t p = 3, n = 3, k = 1;
  bool json_out = false;
};

struct ThresholdOpts {
  std::int64_t genus = 25, excluded = 112;
  bool json_out = false;
};

struct DisproveOpts {
  std::uint64_t lo = 127, hi = 729;
  bool full = false;
  std::string mode = "early-exit", out = "runs";
};

struct ReportOpts {
  std::string runs = "runs", format = "json";
};

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::vector<Fe> parse_u_list(const Field& F, const std::string& text) {
  if (text == "all") return family_u_range(F);
  return {parse_element(F, text)};
}

SpectrumMethod parse_method(const std::string& m) {
  if (m == "auto") return SpectrumMethod::kAuto;
  if (m == "full") return SpectrumMethod::kFull;
  if (m == "square-class") return SpectrumMethod::kSquareClass;
  throw Error(ErrorCode::kInvalidArgument, "method must be auto, full or square-class");
}

int cmd_spectrum(const SpectrumOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  const Family fam = parse_family(o.family);
  const auto us = parse_u_list(F, o.u);
  json results = json::array();
  if (o.csv_out) out << "field,family,u_index,u_label,du,verdict,spectrum\n";
  for (Fe u : us) {
    SparsePoly f;
    if (o.caption) {
      auto cap = make_caption_variant(F, fam, u);
      if (!cap) throw Error(ErrorCode::kInvalidArgument, "caption exponent is not integral for this field");
      f = *cap;
    } else {
      f = make_family(F, {fam, u, o.j, o.k});
    }
    const auto r = spectrum(F, f, {parse_method(o.method), 0});
    if (o.json_out) {
      json e = {{"u", fe_json(F, u)}, {"excluded", family_excluded_u(F, u)}, {"polynomial", f.to_string(F)}};
      e["report"] = report_json(F, r);
      results.push_back(e);
    } else if (o.csv_out) {
      out << "\"" << F.descriptor() << "\"," << family_name(fam) << "," << u.v << ",\"" << F.describe(u) << "\"," << r.du << ","
          << verdict_string(r.du) << ",\"" << r.to_string() << "\"\n";
    } else {
      out << "u=" << F.describe(u) << "  " << verdict_string(r.du) << "  " << r.to_string() << "  witness a="
          << F.describe(r.witness.a) << " b=" << F.describe(r.witness.b) << "\n";
    }
  }
  if (o.json_out)
    print_json(out, {{"field", field_json(F)}, {"family", std::string(family_name(fam))}, {"j", o.j}, {"k", o.k},
                     {"results", results}});
  return kExitOk;
}

int cmd_sweep(const SweepOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Field F = parse_field(o.field);
  const Family fam = parse_family(o.family);
  const SweepMode mode = o.early_exit ? SweepMode::kEarlyExit : SweepMode::kFull;
  std::vector<Fe> us = family_u_range(F);
  std::set<std::uint32_t> done;
  std::unique_ptr<JsonlSink> sink;
  if (!o.out.empty()) {
    for (const auto& r : JsonlSink::read_all(o.out))
      if (r.value("field", "") == F.descriptor()) done.insert(r.at("u").at("index").get<std::uint32_t>());
    sink = std::make_unique<JsonlSink>(o.out);
  }
  std::vector<Fe> todo;
  for (Fe u : us)
    if (!done.count(u.v)) todo.push_back(u);
  auto entries = sweep_family(F, fam, todo, mode, o.j, o.k, [&](const SweepEntry& e) {
    if (sink) {
      json r = sweep_entry_json(F, e);
      r["field"] = F.descriptor();
      sink->write(r);
    }
  });
  std::uint64_t apn = 0;
  std::set<std::uint32_t> dus;
  for (const auto& e : entries) {
    if (e.verdict != Verdict::kDU) ++apn;
    if (e.du) dus.insert(*e.du);
    if (!o.json_out)
      out << "u=" << F.describe(e.u) << "  " << (e.du ? verdict_string(*e.du) : std::string("not APN"))
          << (e.witness ? "  witness a=" + F.describe(e.witness->a) + " b=" + F.describe(e.witness->b) +
                              " count=" + std::to_string(e.witness->count)
                        : std::string())
          << "\n";
  }
  json summary = {{"command", "sweep"},
                  {"field", F.descriptor()},
                  {"family", std::string(family_name(fam))},
                  {"mode", o.early_exit ? "early-exit" : "full"},
                  {"pairs", entries.size()},
                  {"resumed", done.size()},
                  {"apn_pairs", apn},
                  {"du_values", std::vector<std::uint32_t>(dus.begin(), dus.end())}};
  if (o.json_out) {
    json list = json::array();
    for (const auto& e : entries) list.push_back(sweep_entry_json(F, e));
    json full = summary;
    full["entries"] = list;
    print_json(out, full);
  } else {
    out << "swept " << entries.size() << " u, " << apn << " APN\n";
  }
  if (!o.out.empty()) {
    summary["digest"] = digest_of(summary);
    fs::path base(o.out);
    const std::string stem = base.stem().string();
    write_json_file(base.parent_path() / (stem + ".summary.json"), summary);
    RunManifest m{"sweep", argv, {F.descriptor()}, "",
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  summary["digest"].get<std::string>()};
    write_json_file(base.parent_path() / (stem + ".manifest.json"), manifest_json(m));
  }
  return kExitOk;
}

int cmd_verify_tables(const TablesOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string path = o.fixture.empty() ? table_fixture_path(o.table) : o.fixture;
  const auto rows = load_table_csv(path);
  const auto tc = verify_table(o.table, rows);
  if (o.json_out) {
    json j = table_check_json(tc);
    j["fixture"] = path;
    print_json(out, j);
  } else {
    for (const auto& rc : tc.rows) {
      const std::string where = "line " + std::to_string(rc.row.line) + " (p=" + std::to_string(rc.row.p) +
                                ", n=" + std::to_string(rc.row.n) + ", u=" + rc.row.u_label + ")";
      if (rc.pass) {
        out << "ok       " << where << "  " << format_spectrum(rc.expected) << "  [" << row_match_name(rc.match)
            << (rc.match == RowMatch::kRestricted ? ": a=1 row dropped; full " + format_spectrum(rc.body) : "")
            << "]\n";
      } else {
        out << "MISMATCH " << where << "\n  fixture:  " << format_spectrum(rc.expected)
            << "\n  computed: " << format_spectrum(rc.body) << "\n";
        for (const auto& r : rc.restrictions)
          out << "  " << r.hypothesis << ": " << format_spectrum(r.spectrum) << (r.matches ? " (matches)" : "") << "\n";
      }
    }
    out << "exponent of record (body): " << tc.body_matches << "/" << tc.rows.size()
        << " rows on the full domain; caption exponent: " << tc.caption_matches << "/" << tc.rows.size() << "\n";
    std::map<std::string, std::size_t> hyp;
    std::size_t restricted_rows = 0;
    for (const auto& rc : tc.rows) {
      if (rc.restrictions.empty()) continue;
      ++restricted_rows;
      for (const auto& r : rc.restrictions)
        if (r.matches) ++hyp[r.hypothesis];
    }
    if (restricted_rows) {
      out << "short-total rows: " << restricted_rows << "; restricted-domain hypotheses reproducing them:";
      for (const auto& [h, c] : hyp) out << " [" << h << ": " << c << "]";
      out << "\n";
    }
    out << "table " << o.table << ": " << (tc.pass ? "PASS" : "FAIL") << "\n";
  }
  if (!o.out.empty()) {
    json summary = table_check_json(tc);
    summary.erase("detail");
    summary["command"] = "verify-tables";
    summary["digest"] = digest_of(summary);
    const fs::path dir(o.out);
    const std::string stem = "verify_table" + std::to_string(o.table);
    write_json_file(dir / (stem + ".summary.json"), summary);
    std::set<std::string> fields;
    for (const auto& rc : tc.rows) fields.insert(rc.field);
    RunManifest m{"verify-tables", argv, {fields.begin(), fields.end()}, "",
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  summary["digest"].get<std::string>()};
    write_json_file(dir / (stem + ".manifest.json"), manifest_json(m));
  }
  return tc.pass ? kExitOk : kExitViolation;
}

int cmd_cases(const CasesOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  const Fe u = parse_element(F, o.u), a = parse_element(F, o.a), b = parse_element(F, o.b);
  const auto c = analyze_cases(F, u, a, b);
  const std::uint32_t direct = sq2_solution_count(F, u, a, b);
  if (o.json_out) {
    json j = case_analysis_json(F, c);
    j["field"] = field_json(F);
    j["direct_count"] = direct;
    print_json(out, j);
  } else {
    for (const auto& cr : c.cases) {
      out << case_name(cr.tag) << ": predicate " << (cr.predicate ? "true" : "false") << " (corrected "
          << (cr.predicate_corrected ? "true" : "false") << "), valid " << cr.valid_count << ":";
      for (const auto& cd : cr.candidates)
        out << " " << F.describe(cd.x) << (cd.valid ? "" : "(x)");
      out << "\n";
    }
    for (const auto& bd : c.boundary)
      out << "boundary x=" << F.describe(bd.x) << (bd.solves ? " solves" : "") << "\n";
    out << "predicted " << c.predicted_total << ", direct " << direct << "\n";
  }
  return c.predicted_total == direct ? kExitOk : kExitViolation;
}

int cmd_witness(const WitnessOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  const Fe u = parse_element(F, o.u);
  std::optional<Fe> xi;
  if (!o.xi.empty()) xi = parse_element(F, o.xi);
  json j = {{"field", field_json(F)}, {"u", fe_json(F, u)}};
  bool found = false;
  if (u == F.from_int(3)) {
    auto r = u3_branch_witness(F);
    if (r) {
      found = true;
      j["u3_branch"] = u3_json(F, *r);
      if (!o.json_out)
        out << "u=3 route " << u3_route_name(r->route) << (r->rule.empty() ? "" : " (" + r->rule + ")") << ": a="
            << F.describe(r->a) << " b=" << F.describe(r->b) << " count=" << r->count << "\n";
    }
  } else {
    auto w = find_system2_witness(F, u, xi);
    if (w) {
      found = true;
      j["system2"] = system2_json(F, *w);
      if (!o.json_out) {
        out << "a=" << F.describe(w->a) << " b=" << F.describe(w->b) << " xi=" << F.describe(w->xi) << "\n";
        for (const auto& t : w->tests) out << "  " << t.name << " = " << F.describe(t.value) << "  eta " << t.eta << "\n";
        out << "roots:";
        for (Fe r : w->roots) out << " " << F.describe(r);
        out << "\nverified " << (verify_system2(F, *w) ? "yes" : "no") << ", Delta(a,b) = "
            << sq2_solution_count(F, u, w->a, w->b) << "\n";
      }
    }
  }
  j["found"] = found;
  if (o.json_out) print_json(out, j);
  else if (!found) out << "no witness found\n";
  return found ? kExitOk : kExitViolation;
}

std::uint64_t row_checksum(const std::vector<std::uint64_t>& row) {
  std::string bytes;
  for (auto v : row) bytes += std::to_string(v) + ",";
  return fnv1a64(bytes);
}

int cmd_charsum(const CharsumOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  WeilParams wp;
  wp.j = o.j;
  wp.k = o.k;
  wp.u = parse_element(F, o.u);
  wp.eps = o.eps;
  wp.mu = o.mu;
  wp.a = parse_element(F, o.a);
  if (o.bench) {
    out << "field,method,wall_ns,result_checksum\n";
    auto time_it = [&](auto&& fn) {
      std::int64_t best = INT64_MAX;
      std::vector<std::uint64_t> row;
      for (int r = 0; r < std::max(1, o.reps); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        row = fn();
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
        best = std::min<std::int64_t>(best, ns);
      }
      return std::make_pair(best, row_checksum(row));
    };
    const auto [hn, hc] = time_it([&] { return case_equation_row(F, wp); });
    const auto [wn, wc] = time_it([&] { return ddt_row_weil(F, wp); });
    out << "\"" << F.descriptor() << "\",histogram," << hn << "," << hc << "\n";
    out << "\"" << F.descriptor() << "\",weil," << wn << "," << wc << "\n";
    return hc == wc ? kExitOk : kExitViolation;
  }
  const Fe b = parse_element(F, o.b);
  const auto weil = ddt_entry_weil(F, wp, b);
  const auto direct = case_equation_count(F, wp, b);
  if (o.json_out) {
    print_json(out, {{"field", field_json(F)}, {"j", o.j}, {"k", o.k}, {"u", fe_json(F, wp.u)}, {"a", fe_json(F, wp.a)},
                     {"b", fe_json(F, b)}, {"eps", o.eps}, {"mu", o.mu}, {"weil", weil}, {"direct", direct},
                     {"equal", weil == direct}});
  } else {
    out << "weil " << weil << "  direct " << direct << (weil == direct ? "  equal" : "  DIFFER") << "\n";
  }
  return weil == direct ? kExitOk : kExitViolation;
}

int cmd_kim(const KimOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  json j = {{"field", field_json(F)}, {"k", o.k}};
  int code = kExitOk;
  if (!o.solve_A.empty()) {
    const Fe A = parse_element(F, o.solve_A);
    const auto roots = solve_kim_brute(F, o.k, A);
    json r = json::array();
    for (Fe x : roots) r.push_back(fe_json(F, x));
    j["solve_A"] = {{"A", fe_json(F, A)}, {"roots", r}, {"count", roots.size()}};
    if (!o.json_out) {
      out << "X^{q+1}+X+A with A=" << F.describe(A) << ": " << roots.size() << " roots:";
      for (Fe x : roots) out << " " << F.describe(x);
      out << "\n";
    }
  }
  if (!o.from_U.empty()) {
    const Fe U = parse_element(F, o.from_U);
    const auto inst = kim_instance_from_U(F, o.k, U);
    const auto roots = kim_roots_from_U(F, o.k, U);
    auto brute = solve_kim_brute(F, o.k, inst.A);
    auto sorted = roots;
    std::sort(sorted.begin(), sorted.end());
    const bool agree = sorted == brute;
    json r = json::array();
    for (Fe x : roots) r.push_back(fe_json(F, x));
    j["from_U"] = {{"U", fe_json(F, U)}, {"A", fe_json(F, inst.A)}, {"d", inst.d}, {"roots", r},
                   {"brute_force_agrees", agree}};
    if (!o.json_out) {
      out << "U=" << F.describe(U) << " -> A=" << F.describe(inst.A) << ", " << roots.size() << " roots ("
          << (agree ? "agree with enumeration" : "DISAGREE with enumeration") << "):";
      for (Fe x : roots) out << " " << F.describe(x);
      out << "\n";
    }
    if (!agree) code = kExitViolation;
  }
  if (!o.u.empty()) {
    const Fe u = parse_element(F, o.u);
    std::optional<Fe> xi;
    if (!o.xi.empty()) xi = parse_element(F, o.xi);
    const auto res = find_equazionegen_witness(F, o.k, u, xi);
    j["search"] = {{"u", fe_json(F, u)}, {"valid_U", res.valid_u_count}, {"pairs_examined", res.pairs_examined}};
    if (res.witness) j["search"]["witness"] = kim_witness_json(F, *res.witness);
    if (!o.json_out) {
      out << "valid U: " << res.valid_u_count << ", pairs examined: " << res.pairs_examined << "\n";
      if (res.witness) {
        const auto& w = *res.witness;
        out << "witness U=" << F.describe(w.U) << " a=" << F.describe(w.a) << " b=" << F.describe(w.b) << " case "
            << dcase_name(w.tag) << ", surviving roots " << w.surviving.size() << ", Delta(a,b) = " << w.ddt_count
            << "\n";
      } else {
        out << "no witness through the Kim parametrization\n";
      }
    }
  }
  if (o.json_out) print_json(out, j);
  return code;
}

int cmd_cubic_solve(const CubicOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  std::vector<Fe> cs;
  std::stringstream ss(o.coeffs);
  std::string tok;
  while (std::getline(ss, tok, ',')) cs.push_back(parse_element(F, tok));
  if (cs.size() != 4) throw Error(ErrorCode::kInvalidArgument, "--coeffs takes d,c,b,a");
  const Fe d = cs[0], c = cs[1], b = cs[2], a = cs[3];
  if (a == F.zero()) throw Error(ErrorCode::kInvalidArgument, "leading coefficient a must be nonzero");
  const MonicCubic g{F.div(b, a), F.div(c, a), F.div(d, a)};
  CubicRoots r;
  bool formula_scope = true;
  try {
    r = solve_cubic(F, g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kWrongResidueClass) throw;
    formula_scope = false;
    r.roots = cubic_roots_brute(F, g);
    r.path = CubicPath::kEnumeration;
  }
  std::optional<bool> perm;
  if (F.p() != 3) perm = is_perm_cubic(F, a, b, c, d);
  if (o.json_out) {
    json j = cubic_roots_json(F, r);
    j["field"] = field_json(F);
    j["formula_scope"] = formula_scope;
    j["permutation"] = perm ? json(*perm) : json(nullptr);
    print_json(out, j);
  } else {
    out << "path " << cubic_path_name(r.path) << ", roots:";
    for (Fe x : r.roots) out << " " << F.describe(x);
    out << "\npermutation polynomial: " << (!perm ? "n/a (characteristic 3)" : *perm ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int cmd_cubic_family(const CubicOpts& o, std::ostream& out) {
  const Field F = parse_field(o.field);
  const auto rep = cube3_family_report(F);
  std::optional<Fe> only;
  if (o.u != "all") only = parse_element(F, o.u);
  bool all_hold = true;
  for (const auto& c : rep.claims) all_hold = all_hold && c.holds;
  if (o.json_out) {
    json j = cube3_report_json(F, rep);
    if (only) {
      json keep = json::array();
      for (const auto& e : j["entries"])
        if (e["u"]["index"] == only->v) keep.push_back(e);
      j["entries"] = keep;
    }
    print_json(out, j);
  } else {
    for (const auto& e : rep.entries) {
      if (only && e.u != *only) continue;
      out << "u=" << F.describe(e.u) << (e.excluded ? " (excluded)" : "") << "  " << verdict_string(e.du) << "  "
          << format_spectrum(e.spectrum) << "\n";
    }
    out << "DU values (u outside {0,+-1}):";
    for (auto d : rep.du_values) out << " " << d;
    out << "\n";
    for (const auto& c : rep.claims)
      out << (c.holds ? "claim holds: " : "claim FAILS: ") << c.claim << "; observed " << c.observed << "\n";
  }
  return all_hold ? kExitOk : kExitViolation;
}

int cmd_genus(const GenusOpts& o, std::ostream& out) {
  if (!o.derive.empty()) {
    TowerFixture fx;
    if (o.derive == "system2") fx = derive_system2_fixture();
    else if (o.derive == "kim") fx = derive_kim_fixture(o.p, o.n, o.k);
    else throw Error(ErrorCode::kInvalidArgument, "--derive takes system2 or kim");
    const json j = tower_fixture_json(fx);
    if (!o.write.empty()) write_json_file(o.write, j);
    const auto g = tower_genus_sequence(fx.base_genus, fx.steps);
    if (o.json_out) print_json(out, {{"fixture", j}, {"genera", g}});
    else {
      out << "genera:";
      for (auto x : g) out << " " << x;
      out << "\n";
    }
    return kExitOk;
  }
  if (o.steps.empty()) throw Error(ErrorCode::kInvalidArgument, "--steps or --derive is required");
  const auto fx = load_tower_fixture(o.steps);
  const auto g = tower_genus_sequence(fx.base_genus, fx.steps);
  if (o.json_out) print_json(out, {{"name", fx.name}, {"field", fx.field}, {"genera", g}});
  else {
    out << "genera:";
    for (auto x : g) out << " " << x;
    out << "\n";
  }
  return kExitOk;
}

int cmd_threshold(const ThresholdOpts& o, std::ostream& out) {
  const auto t = solvability_threshold(o.genus, o.excluded);
  if (o.json_out) print_json(out, threshold_json(t));
  else
    out << "q0 = " << t.q0_exact << " (exact Hasse-Weil predicate), " << t.q0_printed
        << " (printed inequality); predecessor prime power " << t.predecessor << " fails\n";
  return t.q0_exact == t.q0_printed ? kExitOk : kExitViolation;
}

int cmd_disprove(DisproveOpts o, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  if (o.full) {
    o.hi = std::max<std::uint64_t>(o.hi, 2719);
    err << "full range " << o.lo << ".." << o.hi << ": estimated " << std::fixed << std::setprecision(0)
        << disprove_time_estimate(o.lo, o.hi) << " s single-core (early exit)\n";
  }
  if (o.mode != "early-exit" && o.mode != "full") throw Error(ErrorCode::kInvalidArgument, "--mode early-exit|full");
  DisproveOptions d;
  d.lo = o.lo;
  d.hi = o.hi;
  d.full_spectra = o.mode == "full";
  d.out_dir = o.out;
  d.argv = argv;
  d.log = [&](const std::string& s) { err << s << "\n"; };
  const auto res = run_disprove(d);
  out << res.summary.dump(2) << "\n";
  return res.apn_above_125 ? kExitViolation : kExitOk;
}

int cmd_report(const ReportOpts& o, std::ostream& out) {
  const auto p = write_report(o.runs, o.format);
  out << p.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"apnforge: differential uniformity toolkit over GF(p^n)", "apnforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SpectrumOpts so;
  auto* sp = app.add_subcommand("spectrum", "Differential spectrum of a family member");
  sp->add_option("--field", so.field, "p^n or p^n/c0,...,cn")->required();
  sp->add_option("--family", so.family, "sq2|cube3|genjk");
  sp->add_option("--u", so.u, "parameter u, or all")->required();
  sp->add_option("--j", so.j);
  sp->add_option("--k", so.k);
  sp->add_option("--method", so.method, "auto|full|square-class");
  sp->add_flag("--caption", so.caption, "use the exponent printed in the table captions");
  auto* sp_json = sp->add_flag("--json", so.json_out);
  sp->add_flag("--csv", so.csv_out)->excludes(sp_json);

  SweepOpts swo;
  auto* sw = app.add_subcommand("sweep", "Verdict for every u outside {0, +-1}");
  sw->add_option("--field", swo.field)->required();
  sw->add_option("--family", swo.family);
  sw->add_option("--j", swo.j);
  sw->add_option("--k", swo.k);
  sw->add_flag("--early-exit", swo.early_exit, "stop each u at the first bin reaching 3");
  sw->add_option("--out", swo.out, "append-only JSONL result file (resumable)");
  sw->add_flag("--json", swo.json_out);

  TablesOpts to;
  auto* vt = app.add_subcommand("verify-tables", "Replay the shipped spectrum tables against brute force");
  vt->add_option("--table", to.table)->required()->check(CLI::Range(1, 3));
  vt->add_option("--fixture", to.fixture, "CSV fixture (default: shipped)");
  vt->add_option("--out", to.out, "directory for summary and manifest");
  vt->add_flag("--json", to.json_out);

  CasesOpts co;
  auto* cs = app.add_subcommand("cases", "Quadratic-character case analysis of one SQ2 equation");
  cs->add_option("--field", co.field)->required();
  cs->add_option("--u", co.u)->required();
  cs->add_option("--a", co.a)->required();
  cs->add_option("--b", co.b)->required();
  cs->add_flag("--json", co.json_out);

  WitnessOpts wo;
  auto* wi = app.add_subcommand("witness", "Non-APN witness from the three-root system");
  wi->add_option("--field", wo.field)->required();
  wi->add_option("--u", wo.u)->required();
  wi->add_option("--xi", wo.xi, "nonsquare (default: first by index)");
  wi->add_flag("--json", wo.json_out);

  CharsumOpts cho;
  auto* ch = app.add_subcommand("charsum", "DDT entry through additive character sums");
  ch->add_option("--field", cho.field)->required();
  ch->add_option("--j", cho.j);
  ch->add_option("--k", cho.k);
  ch->add_option("--u", cho.u)->required();
  ch->add_option("--a", cho.a);
  ch->add_option("--b", cho.b);
  ch->add_option("--eps", cho.eps)->check(CLI::IsMember({-1, 1}));
  ch->add_option("--mu", cho.mu)->check(CLI::IsMember({-1, 1}));
  ch->add_option("--reps", cho.reps);
  ch->add_flag("--bench", cho.bench, "time enumeration vs Weil sums over all b, CSV");
  ch->add_flag("--json", cho.json_out);

  KimOpts ko;
  auto* km = app.add_subcommand("kim", "X^{q+1}+X+A machinery");
  km->add_option("--field", ko.field)->required();
  km->add_option("--k", ko.k)->required();
  km->add_option("--u", ko.u, "search a witness for GEN_JK with j=k at this u");
  km->add_option("--solve-A", ko.solve_A);
  km->add_option("--from-U", ko.from_U);
  km->add_option("--xi", ko.xi);
  km->add_flag("--json", ko.json_out);

  CubicOpts cuo;
  auto* cu = app.add_subcommand("cubic", "Cubic solver and CUBE3 family report");
  cu->require_subcommand(1);
  auto* cu_solve = cu->add_subcommand("solve", "Roots of a x^3 + b x^2 + c x + d");
  cu_solve->add_option("--field", cuo.field)->required();
  cu_solve->add_option("--coeffs", cuo.coeffs, "d,c,b,a")->required();
  cu_solve->add_flag("--json", cuo.json_out);
  auto* cu_fam = cu->add_subcommand("family", "CUBE3 verdicts and published claims");
  cu_fam->add_option("--field", cuo.field)->required();
  cu_fam->add_option("--u", cuo.u);
  cu_fam->add_flag("--json", cuo.json_out);

  GenusOpts go;
  auto* ge = app.add_subcommand("genus", "Genus sequence of a Kummer tower");
  ge->add_option("--steps", go.steps, "tower fixture JSON");
  ge->add_option("--derive", go.derive, "system2|kim: derive ramification data");
  ge->add_option("--write", go.write, "write the derived fixture here");
  ge->add_option("--p", go.p);
  ge->add_option("--n", go.n);
  ge->add_option("--k", go.k);
  ge->add_flag("--json", go.json_out);

  ThresholdOpts tho;
  auto* th = app.add_subcommand("threshold", "Least q beyond which the Hasse-Weil bound forces a point");
  th->add_option("--genus", tho.genus);
  th->add_option("--excluded", tho.excluded);
  th->add_flag("--json", tho.json_out);

  DisproveOpts dso;
  auto* ds = app.add_subcommand("disprove", "SQ2 APN search over a range of odd prime powers");
  ds->add_option("--lo", dso.lo);
  ds->add_option("--hi", dso.hi);
  ds->add_flag("--full", dso.full, "extend the range to 2719");
  ds->add_option("--mode", dso.mode, "early-exit|full");
  ds->add_option("--out", dso.out, "run directory");

  ReportOpts ro;
  auto* rp = app.add_subcommand("report", "Aggregate run summaries");
  rp->add_option("--runs", ro.runs);
  rp->add_option("--format", ro.format, "json|csv|md");

  std::vector<std::string> argv_full{"apnforge"};
  argv_full.insert(argv_full.end(), args.begin(), args.end());
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (sp->parsed()) return cmd_spectrum(so, out);
    if (sw->parsed()) return cmd_sweep(swo, argv_full, out);
    if (vt->parsed()) return cmd_verify_tables(to, argv_full, out);
    if (cs->parsed()) return cmd_cases(co, out);
    if (wi->parsed()) return cmd_witness(wo, out);
    if (ch->parsed()) return cmd_charsum(cho, out);
    if (km->parsed()) return cmd_kim(ko, out);
    if (cu_solve->parsed()) return cmd_cubic_solve(cuo, out);
    if (cu_fam->parsed()) return cmd_cubic_family(cuo, out);
    if (ge->parsed()) return cmd_genus(go, out);
    if (th->parsed()) return cmd_threshold(tho, out);
    if (ds->parsed()) return cmd_disprove(dso, argv_full, out, err);
    if (rp->parsed()) return cmd_report(ro, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace apnforge::cli
