#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json_io.hpp"

namespace apnforge::cli {

std::uint64_t fnv1a64(std::string_view data);
// Digest of the compact dump of `doc`; key order is insertion order.
std::string digest_of(const json& doc);

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::string> fields;  // descriptors with modulus
  std::string version;
  double wall_seconds = 0;
  std::string digest;
};

json manifest_json(const RunManifest& m);
void write_json_file(const std::filesystem::path& path, const json& doc);

// Append-only JSON-lines file. On open, a trailing partial line left by an
// interrupted run is cut off so new records start on a fresh line.
class JsonlSink {
 public:
  explicit JsonlSink(const std::filesystem::path& path);
  void write(const json& record);
  static std::vector<json> read_all(const std::filesystem::path& path);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

struct DisproveOptions {
  std::uint64_t lo = 127;
  std::uint64_t hi = 729;
  bool full_spectra = false;  // exact DU for every pair instead of early exit
  std::filesystem::path out_dir = "runs";
  std::vector<std::string> argv;
  // Stops after this many fields (used to interrupt runs in tests).
  std::uint64_t field_limit = UINT64_MAX;
  std::function<void(const std::string&)> log;
};

struct DisproveResult {
  json summary;  // includes "digest"
  std::filesystem::path stream_path;
  std::filesystem::path summary_path;
  std::filesystem::path manifest_path;
  std::uint64_t apn_above_125 = 0;
  bool complete = false;
};

std::vector<std::uint64_t> odd_prime_powers_in(std::uint64_t lo, std::uint64_t hi);
// Rough single-core early-exit cost in seconds, calibrated on one field.
double disprove_time_estimate(std::uint64_t lo, std::uint64_t hi);
DisproveResult run_disprove(const DisproveOptions& options);

// Aggregates every *.summary.json / *.manifest.json under `dir`. Throws NoRuns.
json collect_runs(const std::filesystem::path& dir);
// Writes report.<ext> (json, csv or md) into `dir` and returns its path.
std::filesystem::path write_report(const std::filesystem::path& dir, const std::string& format);

}  // namespace apnforge::cli
