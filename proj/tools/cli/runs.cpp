#include "runs.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"

#ifndef APNFORGE_VERSION
#define APNFORGE_VERSION "0.0.0"
#endif

namespace apnforge::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_of(const json& doc) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << fnv1a64(doc.dump());
  return "fnv1a64:" + os.str();
}

json manifest_json(const RunManifest& m) {
  return {{"command", m.command},
          {"argv", m.argv},
          {"fields", m.fields},
          {"version", m.version.empty() ? std::string(APNFORGE_VERSION) : m.version},
          {"wall_seconds", m.wall_seconds},
          {"digest", m.digest}};
}

void write_json_file(const fs::path& path, const json& doc) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

JsonlSink::JsonlSink(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (fs::exists(path)) {
    std::string content;
    {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      content = ss.str();
    }
    if (!content.empty() && content.back() != '\n') {
      const auto cut = content.find_last_of('\n');
      fs::resize_file(path, cut == std::string::npos ? 0 : cut + 1);
    }
  }
  out_.open(path, std::ios::app);
  if (!out_) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string());
}

void JsonlSink::write(const json& record) {
  std::lock_guard<std::mutex> lock(mu_);
  out_ << record.dump() << "\n";
  out_.flush();
}

std::vector<json> JsonlSink::read_all(const fs::path& path) {
  std::vector<json> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const nlohmann::json::exception&) {
      // A torn final line from an interrupted run.
    }
  }
  return out;
}

std::vector<std::uint64_t> odd_prime_powers_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = std::max<std::uint64_t>(lo, 3); q <= hi; ++q)
    if (odd_prime_power(q)) out.push_back(q);
  return out;
}

double disprove_time_estimate(std::uint64_t lo, std::uint64_t hi) {
  const Field F = Field::build(3, 5);
  const auto us = family_u_range(F);
  const std::size_t probe = std::min<std::size_t>(us.size(), 40);
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < probe; ++i) (void)refute_apn(F, make_family(F, {Family::kSq2, us[i], 0, 0}));
  const double per_u = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / double(probe);
  double total = 0;
  for (auto q : odd_prime_powers_in(lo, hi)) total += per_u * double(q) / 243.0 * double(q - 3);
  return total;
}

namespace {

std::string record_key(std::uint64_t q, std::uint64_t u) { return std::to_string(q) + ":" + std::to_string(u); }

json disprove_record(std::uint64_t q, const Field& F, const SweepEntry& e) {
  json r = {{"q", q}, {"field", F.descriptor()}, {"u", e.u.v}, {"u_label", F.describe(e.u)}};
  r["verdict"] = e.verdict == Verdict::kPN ? "PN" : e.verdict == Verdict::kAPN ? "APN" : "DU";
  r["du"] = e.du ? json(*e.du) : json(nullptr);
  r["witness"] = e.witness ? witness_json(F, *e.witness) : json(nullptr);
  return r;
}

}  // namespace

DisproveResult run_disprove(const DisproveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string stem = "disprove_" + std::to_string(opt.lo) + "_" + std::to_string(opt.hi) +
                           (opt.full_spectra ? "_full" : "");
  DisproveResult res;
  res.stream_path = opt.out_dir / (stem + ".jsonl");
  res.summary_path = opt.out_dir / (stem + ".summary.json");
  res.manifest_path = opt.out_dir / (stem + ".manifest.json");
  fs::create_directories(opt.out_dir);

  std::set<std::string> done;
  for (const auto& r : JsonlSink::read_all(res.stream_path))
    done.insert(record_key(r.at("q").get<std::uint64_t>(), r.at("u").get<std::uint64_t>()));

  const auto fields = odd_prime_powers_in(opt.lo, opt.hi);
  std::vector<std::string> descriptors;
  {
    JsonlSink sink(res.stream_path);
    std::uint64_t worked = 0;
    for (auto q : fields) {
      const auto pn = *odd_prime_power(q);
      const Field F = Field::build(pn.first, pn.second);
      descriptors.push_back(F.descriptor());
      std::vector<Fe> todo;
      for (Fe u : family_u_range(F))
        if (!done.count(record_key(q, u.v))) todo.push_back(u);
      if (todo.empty()) continue;
      if (worked >= opt.field_limit) return res;
      ++worked;
      if (opt.log) opt.log("q=" + std::to_string(q) + " (" + std::to_string(todo.size()) + " u)");
      sweep_family(F, Family::kSq2, todo, opt.full_spectra ? SweepMode::kFull : SweepMode::kEarlyExit, 0, 0,
                   [&](const SweepEntry& e) { sink.write(disprove_record(q, F, e)); });
    }
  }
  res.complete = true;

  std::map<std::pair<std::uint64_t, std::uint64_t>, json> records;
  for (auto& r : JsonlSink::read_all(res.stream_path)) {
    const auto q = r.at("q").get<std::uint64_t>();
    if (q < opt.lo || q > opt.hi) continue;
    records.emplace(std::make_pair(q, r.at("u").get<std::uint64_t>()), std::move(r));
  }
  json apn = json::array();
  json per_field = json::array();
  std::uint64_t apn_pairs = 0, witnessed = 0;
  std::uint64_t max_apn_q = 0;
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;  // q -> (pairs, apn)
  json canonical = json::array();
  for (const auto& [key, r] : records) {
    auto& c = counts[key.first];
    ++c.first;
    if (!r["witness"].is_null()) ++witnessed;
    if (r["verdict"] == "APN" || r["verdict"] == "PN") {
      ++c.second;
      ++apn_pairs;
      max_apn_q = std::max(max_apn_q, key.first);
      if (key.first > 125) ++res.apn_above_125;
      apn.push_back({{"q", key.first}, {"field", r["field"]}, {"u", r["u"]}, {"u_label", r["u_label"]}, {"du", r["du"]}});
    }
    canonical.push_back(r);
  }
  for (const auto& [q, c] : counts) per_field.push_back({{"q", q}, {"pairs", c.first}, {"apn", c.second}});
  json summary = {{"command", "disprove"},
                  {"family", "sq2"},
                  {"range", {opt.lo, opt.hi}},
                  {"mode", opt.full_spectra ? "full" : "early-exit"},
                  {"fields", fields.size()},
                  {"pairs", records.size()},
                  {"witnessed", witnessed},
                  {"apn_pairs", apn_pairs},
                  {"apn_above_125", res.apn_above_125},
                  {"max_apn_q", max_apn_q},
                  {"apn", apn},
                  {"per_field", per_field},
                  {"records_digest", digest_of(canonical)}};
  const std::string digest = digest_of(summary);
  summary["digest"] = digest;
  res.summary = summary;
  write_json_file(res.summary_path, summary);

  RunManifest m;
  m.command = "disprove";
  m.argv = opt.argv;
  m.fields = descriptors;
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m.digest = digest;
  write_json_file(res.manifest_path, manifest_json(m));
  return res;
}

json collect_runs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kNoRuns, "no run directory " + dir.string());
  std::vector<fs::path> summaries;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 13 && name.ends_with(".summary.json")) summaries.push_back(e.path());
  }
  if (summaries.empty()) throw Error(ErrorCode::kNoRuns, "no run summaries in " + dir.string());
  std::sort(summaries.begin(), summaries.end());
  json runs = json::array();
  for (const auto& s : summaries) {
    const std::string name = s.filename().string();
    const std::string stem = name.substr(0, name.size() - 13);
    json entry = {{"name", stem}};
    std::ifstream in(s);
    entry["summary"] = json::parse(in);
    const fs::path mp = dir / (stem + ".manifest.json");
    if (fs::exists(mp)) {
      std::ifstream min(mp);
      entry["manifest"] = json::parse(min);
    }
    runs.push_back(entry);
  }
  return {{"runs", runs}};
}

namespace {

std::string cell(const json& j, const char* key) {
  if (!j.contains(key)) return "";
  const auto& v = j[key];
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

fs::path write_report(const fs::path& dir, const std::string& format) {
  const json all = collect_runs(dir);
  if (format == "json") {
    const fs::path p = dir / "report.json";
    write_json_file(p, all);
    return p;
  }
  if (format == "csv") {
    const fs::path p = dir / "report.csv";
    std::ofstream out(p, std::ios::trunc);
    out << "name,command,range,mode,pairs,apn_pairs,apn_above_125,pass,digest,wall_seconds\n";
    for (const auto& r : all["runs"]) {
      const auto& s = r["summary"];
      const json m = r.value("manifest", json::object());
      out << csv_quote(r["name"].get<std::string>()) << "," << csv_quote(cell(s, "command")) << ","
          << csv_quote(cell(s, "range")) << "," << csv_quote(cell(s, "mode")) << "," << cell(s, "pairs") << ","
          << cell(s, "apn_pairs") << "," << cell(s, "apn_above_125") << "," << cell(s, "pass") << ","
          << cell(s, "digest") << "," << cell(m, "wall_seconds") << "\n";
    }
    return p;
  }
  if (format == "md") {
    const fs::path p = dir / "report.md";
    std::ofstream out(p, std::ios::trunc);
    out << "# apnforge run report\n\n";
    for (const auto& r : all["runs"]) {
      const auto& s = r["summary"];
      out << "## " << r["name"].get<std::string>() << "\n\n";
      for (auto it = s.begin(); it != s.end(); ++it) {
        if (it.value().is_array() || it.value().is_object()) continue;
        out << "- " << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
            << "\n";
      }
      if (s.contains("apn") && s["apn"].is_array() && !s["apn"].empty()) {
        out << "- APN instances:";
        for (const auto& a : s["apn"]) out << " (q=" << a["q"].dump() << ", u=" << cell(a, "u_label") << ")";
        out << "\n";
      }
      if (r.contains("manifest")) out << "- wall seconds: " << r["manifest"]["wall_seconds"].dump() << "\n";
      out << "\n";
    }
    return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "format must be json, csv or md");
}

}  // namespace apnforge::cli
