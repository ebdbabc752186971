#include "apnforge/ddt.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

#include "apnforge/error.hpp"
#include "apnforge/parallel.hpp"

namespace apnforge {

SparsePoly::SparsePoly(const Field& field, std::vector<Term> terms) {
  const std::uint64_t qm1 = field.q() - 1;
  std::map<std::uint64_t, Fe> merged;
  for (const Term& t : terms) {
    const std::uint64_t e = t.exponent == 0 ? 0 : (t.exponent - 1) % qm1 + 1;
    auto [it, inserted] = merged.try_emplace(e, t.coef);
    if (!inserted) it->second = field.add(it->second, t.coef);
  }
  for (const auto& [e, c] : merged) {
    if (c != field.zero()) terms_.push_back(Term{e, c});
  }
}

Fe SparsePoly::eval(const Field& field, Fe x) const {
  Fe acc = field.zero();
  for (const Term& t : terms_) acc = field.add(acc, field.mul(t.coef, field.pow(x, t.exponent)));
  return acc;
}

std::vector<Fe> SparsePoly::values(const Field& field) const {
  std::vector<Fe> out(field.q());
  for (std::uint32_t i = 0; i < field.q(); ++i) out[i] = eval(field, Fe{i});
  return out;
}

std::string SparsePoly::to_string(const Field& field) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    if (it->coef != field.one() || it->exponent == 0) s += "[" + field.describe(it->coef) + "]";
    if (it->exponent > 0) s += "x^" + std::to_string(it->exponent);
  }
  return s;
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kSq2: return "sq2";
    case Family::kCube3: return "cube3";
    case Family::kGenJK: return "genjk";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "sq2") return Family::kSq2;
  if (name == "cube3") return Family::kCube3;
  if (name == "genjk") return Family::kGenJK;
  throw Error(ErrorCode::kParseError, "unknown family '" + std::string(name) + "'");
}

SparsePoly make_family(const Field& field, const FamilyParams& params) {
  const std::uint64_t q = field.q();
  switch (params.family) {
    case Family::kSq2:
      return SparsePoly(field, {{(q + 3) / 2, field.one()}, {2, params.u}});
    case Family::kCube3:
      return SparsePoly(field, {{(q - 1) / 2 + 3, field.one()}, {3, params.u}});
    case Family::kGenJK: {
      if (params.j > params.k || params.k >= field.n()) {
        throw Error(ErrorCode::kInvalidArgument, "GEN_JK needs 0 <= j <= k < n");
      }
      std::uint64_t pk = 1, pj = 1;
      for (std::uint32_t i = 0; i < params.k; ++i) pk *= field.p();
      for (std::uint32_t i = 0; i < params.j; ++i) pj *= field.p();
      return SparsePoly(field, {{(q - 1) / 2 + pk + 1, field.one()}, {pj + 1, params.u}});
    }
  }
  return {};
}

std::optional<SparsePoly> make_caption_variant(const Field& field, Family family, Fe u) {
  const std::uint64_t q = field.q();
  if (family == Family::kSq2) return SparsePoly(field, {{(q + 1) / 2, field.one()}, {2, u}});
  if (family == Family::kCube3 && (q + 1) % 3 == 0) {
    return SparsePoly(field, {{(q + 1) / 3, field.one()}, {3, u}});
  }
  return std::nullopt;
}

bool family_excluded_u(const Field& field, Fe u) {
  return u == field.zero() || u == field.one() || u == field.neg(field.one());
}

std::vector<Fe> family_u_range(const Field& field) {
  std::vector<Fe> out;
  for (std::uint32_t i = 0; i < field.q(); ++i) {
    if (!family_excluded_u(field, Fe{i})) out.push_back(Fe{i});
  }
  return out;
}

std::string format_spectrum(const Spectrum& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [value, freq] : s) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(value) + "^" + std::to_string(freq);
  }
  return out + "}";
}

Spectrum parse_spectrum(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c != '{' && c != '}' && c != ' ' && c != '$' && c != '\t') cleaned += c;
  }
  Spectrum out;
  std::string_view rest = cleaned;
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::kParseError, "bad spectrum '" + std::string(text) + "'");
    }
    return v;
  };
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    const auto caret = item.find('^');
    if (caret == std::string_view::npos) throw Error(ErrorCode::kParseError, "bad spectrum item");
    out[static_cast<std::uint32_t>(number(item.substr(0, caret)))] += number(item.substr(caret + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

Verdict verdict_for(std::uint32_t du) {
  if (du == 1) return Verdict::kPN;
  if (du == 2) return Verdict::kAPN;
  return Verdict::kDU;
}

std::string verdict_string(std::uint32_t du) {
  switch (verdict_for(du)) {
    case Verdict::kPN: return "PN";
    case Verdict::kAPN: return "APN";
    case Verdict::kDU: break;
  }
  return "DU(" + std::to_string(du) + ")";
}

std::string_view method_name(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::kAuto: return "auto";
    case SpectrumMethod::kFull: return "full";
    case SpectrumMethod::kSquareClass: return "square-class";
  }
  return "?";
}

std::uint64_t SpectrumReport::cells() const {
  std::uint64_t s = 0;
  for (const auto& [v, f] : freq) s += f;
  return s;
}

std::uint64_t SpectrumReport::weighted_sum() const {
  std::uint64_t s = 0;
  for (const auto& [v, f] : freq) s += v * f;
  return s;
}

std::vector<std::uint32_t> ddt_row(const Field& field, std::span<const Fe> values, Fe a) {
  if (a == field.zero()) throw Error(ErrorCode::kZeroShift, "shift a must be nonzero");
  std::vector<std::uint32_t> count(field.q(), 0);
  for (std::uint32_t x = 0; x < field.q(); ++x) {
    const Fe b = field.sub(values[field.add(Fe{x}, a).v], values[x]);
    ++count[b.v];
  }
  return count;
}

std::vector<std::uint32_t> ddt_row(const Field& field, const SparsePoly& f, Fe a) {
  const auto values = f.values(field);
  return ddt_row(field, values, a);
}

bool square_class_invariant(const Field& field, const SparsePoly& f) {
  const std::uint64_t half = (field.q() - 1) / 2;
  std::optional<std::uint64_t> residue;
  for (const Term& t : f.terms()) {
    if (t.exponent == 0) continue;
    const std::uint64_t r = t.exponent % half;
    if (residue && *residue != r) return false;
    residue = r;
  }
  return true;
}

namespace {

struct RowSummary {
  std::uint32_t max = 0;
  Fe argmax;
};

RowSummary accumulate_row(const std::vector<std::uint32_t>& row, std::vector<std::uint64_t>& hist,
                          std::uint64_t weight) {
  RowSummary s;
  for (std::uint32_t b = 0; b < row.size(); ++b) {
    hist[row[b]] += weight;
    if (row[b] > s.max) {
      s.max = row[b];
      s.argmax = Fe{b};
    }
  }
  return s;
}

Spectrum to_spectrum(const std::vector<std::uint64_t>& hist) {
  Spectrum s;
  for (std::uint32_t v = 0; v < hist.size(); ++v) {
    if (hist[v] != 0) s[v] = hist[v];
  }
  return s;
}

}  // namespace

SpectrumReport spectrum(const Field& field, const SparsePoly& f, SpectrumOptions options) {
  if (f.is_zero() || (f.terms().size() == 1 && f.terms()[0].exponent == 0)) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum of a constant function");
  }
  const std::uint32_t q = field.q();
  const auto values = f.values(field);
  SpectrumReport report;
  SpectrumMethod method = options.method;
  if (method == SpectrumMethod::kAuto) {
    method = square_class_invariant(field, f) ? SpectrumMethod::kSquareClass : SpectrumMethod::kFull;
  }
  if (method == SpectrumMethod::kSquareClass && !square_class_invariant(field, f)) {
    throw Error(ErrorCode::kInvalidArgument, "square-class reduction does not apply to this function");
  }
  report.method = method;
  std::vector<std::uint64_t> hist(q + 1, 0);
  if (method == SpectrumMethod::kSquareClass) {
    const std::uint64_t weight = (q - 1) / 2;
    const Fe reps[2] = {field.one(), field.first_nonsquare()};
    for (Fe a : reps) {
      const RowSummary s = accumulate_row(ddt_row(field, values, a), hist, weight);
      if (s.max > report.du) {
        report.du = s.max;
        report.witness = Cell{a, s.argmax};
      }
    }
  } else {
    const unsigned workers = worker_count(options.threads);
    std::vector<std::vector<std::uint64_t>> local(workers, std::vector<std::uint64_t>(q + 1, 0));
    std::vector<RowSummary> rows(q);
    parallel_for(q - 1, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
      for (std::size_t i = begin; i < end; ++i) {
        const Fe a{static_cast<std::uint32_t>(i + 1)};
        rows[a.v] = accumulate_row(ddt_row(field, values, a), local[w], 1);
      }
    });
    for (const auto& l : local) {
      for (std::size_t v = 0; v < hist.size(); ++v) hist[v] += l[v];
    }
    for (std::uint32_t a = 1; a < q; ++a) {
      if (rows[a].max > report.du) {
        report.du = rows[a].max;
        report.witness = Cell{Fe{a}, rows[a].argmax};
      }
    }
  }
  report.freq = to_spectrum(hist);
  report.verdict = verdict_for(report.du);
  return report;
}

Spectrum spectrum_without_rows(const Field& field, const SparsePoly& f, std::span<const Fe> dropped_a) {
  const auto values = f.values(field);
  std::vector<std::uint64_t> hist(field.q() + 1, 0);
  for (std::uint32_t a = 1; a < field.q(); ++a) {
    if (std::find(dropped_a.begin(), dropped_a.end(), Fe{a}) != dropped_a.end()) continue;
    accumulate_row(ddt_row(field, values, Fe{a}), hist, 1);
  }
  return to_spectrum(hist);
}

std::optional<ApnWitness> refute_apn(const Field& field, const SparsePoly& f,
                                     std::optional<std::uint64_t> row_budget) {
  const std::uint32_t q = field.q();
  const auto values = f.values(field);
  std::vector<std::uint8_t> bins(q, 0);
  std::uint64_t rows = 0;
  for (std::uint32_t a = 1; a < q; ++a) {
    if (row_budget && rows >= *row_budget) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "no witness within " + std::to_string(*row_budget) + " rows");
    }
    ++rows;
    std::fill(bins.begin(), bins.end(), 0);
    const Fe fa{a};
    for (std::uint32_t x = 0; x < q; ++x) {
      const Fe b = field.sub(values[field.add(Fe{x}, fa).v], values[x]);
      if (++bins[b.v] == 3) {
        std::uint32_t total = 3;
        for (std::uint32_t y = x + 1; y < q; ++y) {
          if (field.sub(values[field.add(Fe{y}, fa).v], values[y]) == b) ++total;
        }
        return ApnWitness{fa, b, total};
      }
    }
  }
  return std::nullopt;
}

std::vector<SweepEntry> sweep_family(const Field& field, Family family, std::span<const Fe> us,
                                     SweepMode mode, std::uint32_t j, std::uint32_t k,
                                     const std::function<void(const SweepEntry&)>& sink) {
  std::vector<Fe> order(us.begin(), us.end());
  std::sort(order.begin(), order.end());
  std::vector<SweepEntry> out(order.size());
  std::mutex sink_mutex;
  parallel_for(order.size(), worker_count(), [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const Fe u = order[i];
      const SparsePoly f = make_family(field, FamilyParams{family, u, j, k});
      SweepEntry e;
      e.u = u;
      e.u_log = field.log(u).value_or(0);
      if (mode == SweepMode::kEarlyExit) {
        e.witness = refute_apn(field, f);
        if (e.witness) {
          e.verdict = Verdict::kDU;
        } else {
          const auto rep = spectrum(field, f, SpectrumOptions{SpectrumMethod::kAuto, 1});
          e.du = rep.du;
          e.verdict = rep.verdict;
        }
      } else {
        const auto rep = spectrum(field, f, SpectrumOptions{SpectrumMethod::kAuto, 1});
        e.du = rep.du;
        e.verdict = rep.verdict;
        e.spectrum = rep.freq;
        if (rep.du >= 3) e.witness = ApnWitness{rep.witness.a, rep.witness.b, rep.du};
      }
      out[i] = e;
      if (sink) {
        std::lock_guard lock(sink_mutex);
        sink(out[i]);
      }
    }
  });
  return out;
}

PnClaim pn_check(const Field& field, Fe u, std::string label) {
  PnClaim c;
  c.label = std::move(label);
  c.u = u;
  c.excluded = family_excluded_u(field, u);
  const auto rep = spectrum(field, make_family(field, FamilyParams{Family::kSq2, u}));
  c.du = rep.du;
  c.confirmed = rep.du == 1;
  return c;
}

std::vector<PnClaim> pn_remarks_check(const Field& field) {
  if (field.p() != 3) throw Error(ErrorCode::kInvalidArgument, "PN remarks concern p = 3");
  std::vector<PnClaim> out;
  if (field.n() == 1) {
    out.push_back(pn_check(field, field.from_int(-1), "u=-1"));
  } else if (field.n() == 2) {
    for (std::uint32_t e : {1u, 3u, 5u, 7u}) {
      out.push_back(pn_check(field, field.gen_pow(e), e == 1 ? "u=g" : "u=g^" + std::to_string(e)));
    }
  }
  return out;
}

}  // namespace apnforge
