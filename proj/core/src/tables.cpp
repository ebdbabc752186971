#include "apnforge/tables.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "apnforge/error.hpp"

namespace apnforge {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quote on line " + std::to_string(lineno));
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::uint64_t total(const Spectrum& s) {
  std::uint64_t t = 0;
  for (auto [v, c] : s) t += c;
  return t;
}

std::string join_u32(const std::vector<std::uint32_t>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  os << "}";
  return os.str();
}

std::string join_fe(const Field& F, const std::vector<Fe>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << F.describe(xs[i]);
  os << "}";
  return os.str();
}

}  // namespace

std::vector<TableRow> parse_table_csv(const std::string& text) {
  std::vector<TableRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto cols = split_csv_line(line, lineno);
    if (header) {
      header = false;
      if (cols.size() == 4 && trim(cols[0]) == "p") continue;
    }
    if (cols.size() != 4)
      throw Error(ErrorCode::kParseError, "expected 4 columns on line " + std::to_string(lineno));
    TableRow r;
    try {
      r.p = static_cast<std::uint32_t>(std::stoul(trim(cols[0])));
      r.n = static_cast<std::uint32_t>(std::stoul(trim(cols[1])));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad p or n on line " + std::to_string(lineno));
    }
    r.u_label = trim(cols[2]);
    r.spectrum = trim(cols[3]);
    r.line = lineno;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TableRow> load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFixtureMissing, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table_csv(ss.str());
}

Family table_family(int table) {
  if (table == 1 || table == 2) return Family::kSq2;
  if (table == 3) return Family::kCube3;
  throw Error(ErrorCode::kInvalidArgument, "table id must be 1, 2 or 3");
}

std::string row_match_name(RowMatch m) {
  switch (m) {
    case RowMatch::kFull: return "full";
    case RowMatch::kRestricted: return "restricted";
    case RowMatch::kNone: return "none";
  }
  return "?";
}

Spectrum spectrum_without_b0(const Field& F, const SparsePoly& f) {
  const auto vals = f.values(F);
  Spectrum out;
  for (std::uint32_t ai = 1; ai < F.q(); ++ai) {
    const auto row = ddt_row(F, vals, F.element(ai));
    for (std::uint32_t b = 1; b < F.q(); ++b) ++out[row[b]];
  }
  return out;
}

TableCheck verify_table(int table, std::span<const TableRow> rows) {
  const Family fam = table_family(table);
  TableCheck tc;
  tc.table = table;
  tc.pass = !rows.empty();
  for (const auto& row : rows) {
    RowCheck rc;
    rc.row = row;
    const Field F = Field::build(row.p, row.n);
    rc.field = F.descriptor();
    rc.u = parse_element(F, row.u_label);
    rc.expected = parse_spectrum(row.spectrum);
    const auto f = make_family(F, {fam, rc.u, 0, 0});
    rc.body = spectrum(F, f).freq;
    if (auto cap = make_caption_variant(F, fam, rc.u)) {
      rc.caption = spectrum(F, *cap).freq;
      rc.caption_matches = *rc.caption == rc.expected;
    }
    const std::uint64_t q = F.q();
    if (rc.body == rc.expected) {
      rc.match = RowMatch::kFull;
    } else if (total(rc.expected) < q * (q - 1)) {
      const Fe one = F.one(), xi = F.first_nonsquare(), m1 = F.neg(F.one());
      rc.restrictions.push_back({"a=1 row dropped", spectrum_without_rows(F, f, std::span<const Fe>(&one, 1)), false});
      rc.restrictions.push_back({"a=xi row dropped", spectrum_without_rows(F, f, std::span<const Fe>(&xi, 1)), false});
      rc.restrictions.push_back({"a=-1 row dropped", spectrum_without_rows(F, f, std::span<const Fe>(&m1, 1)), false});
      rc.restrictions.push_back({"b=0 column dropped", spectrum_without_b0(F, f), false});
      for (auto& r : rc.restrictions) r.matches = r.spectrum == rc.expected;
      if (total(rc.expected) == q * (q - 1) - q && rc.restrictions[0].matches) rc.match = RowMatch::kRestricted;
    }
    rc.pass = rc.match != RowMatch::kNone;
    if (rc.match == RowMatch::kFull) ++tc.body_matches;
    if (rc.caption_matches) ++tc.caption_matches;
    tc.pass = tc.pass && rc.pass;
    tc.rows.push_back(std::move(rc));
  }
  return tc;
}

std::vector<ClaimCheck> sq2_prose_claims(const Field& F) {
  std::vector<ClaimCheck> out;
  const std::uint32_t p = F.p(), n = F.n();
  struct Claim {
    std::uint32_t p, n;
    std::vector<std::uint32_t> du;
    std::vector<std::int64_t> apn_int;   // prime-field labels
    std::vector<std::uint64_t> apn_gen;  // generator exponents
  };
  static const std::vector<Claim> claims = {
      {5, 2, {2, 3, 4, 5}, {}, {3, 9, 15, 21}},
      {5, 3, {2, 3, 4, 5}, {2, 3}, {}},
      {5, 4, {3, 4, 5, 6}, {}, {}},
      {7, 2, {2, 3, 4, 5}, {}, {2, 12, 14, 26, 36, 38}},
      {7, 3, {3, 4, 5}, {}, {}},
      {11, 2, {3, 4, 5, 6}, {}, {}},
      {13, 2, {3, 4, 5, 6}, {}, {}},
  };
  const auto it = std::find_if(claims.begin(), claims.end(), [&](const Claim& c) { return c.p == p && c.n == n; });
  if (it == claims.end()) return out;
  std::set<std::uint32_t> dus;
  std::vector<Fe> apn;
  for (Fe u : family_u_range(F)) {
    const auto s = spectrum(F, make_family(F, {Family::kSq2, u, 0, 0}));
    dus.insert(s.du);
    if (s.du == 2) apn.push_back(u);
  }
  std::sort(apn.begin(), apn.end());
  const std::vector<std::uint32_t> obs(dus.begin(), dus.end());
  out.push_back({"DU values " + join_u32(it->du), obs == it->du, join_u32(obs)});
  if (!it->apn_int.empty() || !it->apn_gen.empty()) {
    std::vector<Fe> claimed;
    for (auto v : it->apn_int) claimed.push_back(F.from_int(v));
    for (auto k : it->apn_gen) claimed.push_back(F.gen_pow(k));
    std::sort(claimed.begin(), claimed.end());
    out.push_back({"APN exactly for u in " + join_fe(F, claimed), claimed == apn, join_fe(F, apn)});
  }
  return out;
}

std::vector<GenJkClaim> genjk_prose_claims() {
  return {
      {5, 2, 0, 1, {2, 3, 5}}, {5, 2, 1, 1, {5, 9, 13}}, {5, 3, 0, 1, {6, 7}}, {5, 3, 0, 2, {7}},
      {5, 3, 1, 2, {6, 7}},    {5, 3, 2, 2, {2, 3, 4, 5}}, {7, 2, 0, 1, {4, 5, 7}},
  };
}

GenJkClaimCheck check_genjk_claim(const GenJkClaim& claim) {
  const Field F = Field::build(claim.p, claim.n);
  GenJkClaimCheck res;
  res.claim = claim;
  std::set<std::uint32_t> dus;
  for (Fe u : family_u_range(F))
    dus.insert(spectrum(F, make_family(F, {Family::kGenJK, u, claim.a, claim.b})).du);
  res.observed.assign(dus.begin(), dus.end());
  res.du_without_u = spectrum(F, make_family(F, {Family::kGenJK, F.one(), claim.a, claim.b})).du;
  res.holds = res.observed == claim.claimed;
  return res;
}

}  // namespace apnforge
