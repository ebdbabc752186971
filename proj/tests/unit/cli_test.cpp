#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apnforge/error.hpp"
#include "app.hpp"
#include "fixtures.hpp"
#include "json_io.hpp"
#include "runs.hpp"

namespace apnforge::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("apnforge_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"nosuch"}).code, kExitUsage);
  EXPECT_EQ(run({"spectrum", "--u", "2"}).code, kExitUsage);
  const auto r = run({"spectrum", "--field", "4", "--u", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("error: NotPrime"), std::string::npos);
  EXPECT_EQ(run({"charsum", "--field", "5^2", "--u", "2", "--eps", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"disprove", "--lo", "3", "--hi", "5", "--mode", "fast", "--out", scratch("mode").string()}).code,
            kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* cmd : {"spectrum", "sweep", "verify-tables", "cases", "witness", "charsum", "kim", "cubic", "genus",
                          "threshold", "disprove", "report"})
    EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
}

TEST(Cli, SpectrumTextAndJson) {
  const auto r = run({"spectrum", "--field", "7", "--family", "sq2", "--u", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("{0^12, 1^24, 3^6}"), std::string::npos) << r.out;
  const auto j = run({"spectrum", "--field", "7", "--family", "sq2", "--u", "2", "--json"});
  ASSERT_EQ(j.code, kExitOk);
  const auto doc = json::parse(j.out);
  EXPECT_NE(doc.dump().find("\"du\":3"), std::string::npos) << j.out;
}

TEST(Cli, VerifyTablesPasses) {
  for (const char* t : {"1", "2", "3"}) {
    const auto r = run({"verify-tables", "--table", t});
    EXPECT_EQ(r.code, kExitOk) << t;
    EXPECT_NE(r.out.find("table " + std::string(t) + ": PASS"), std::string::npos);
    EXPECT_NE(r.out.find("exponent of record (body)"), std::string::npos);
  }
  EXPECT_NE(run({"verify-tables", "--table", "1"}).out.find("24/24"), std::string::npos);
}

TEST(Cli, VerifyTablesReportsCorruptedFixture) {
  const fs::path dir = scratch("fixture");
  fs::create_directories(dir / "tables");
  std::string csv = slurp(fs::path(APNFORGE_FIXTURE_DIR) / "tables" / "table1.csv");
  const std::string good = "7,1,3,\"{ 0^{12}, 1^{18}, 2^{12} }\"";
  const auto at = csv.find(good);
  ASSERT_NE(at, std::string::npos);
  csv.replace(at, good.size(), "7,1,3,\"{ 0^{12}, 1^{19}, 2^{11} }\"");
  std::ofstream(dir / "tables" / "table1.csv") << csv;
  ::setenv("APNFORGE_FIXTURES", dir.c_str(), 1);
  const auto r = run({"verify-tables", "--table", "1"});
  ::unsetenv("APNFORGE_FIXTURES");
  EXPECT_EQ(r.code, kExitViolation);
  EXPECT_NE(r.out.find("MISMATCH line 5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("table 1: FAIL"), std::string::npos);

  ::setenv("APNFORGE_FIXTURES", (dir / "missing").c_str(), 1);
  const auto m = run({"verify-tables", "--table", "2"});
  ::unsetenv("APNFORGE_FIXTURES");
  EXPECT_EQ(m.code, kExitUsage);
  EXPECT_NE(m.err.find("FixtureMissing"), std::string::npos);
}

TEST(Cli, VerifyTablesWritesSummary) {
  const fs::path dir = scratch("tables_out");
  ASSERT_EQ(run({"verify-tables", "--table", "2", "--out", dir.string()}).code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "verify_table2.summary.json"));
  EXPECT_TRUE(fs::exists(dir / "verify_table2.manifest.json"));
}

TEST(Cli, ClaimViolationsExitOne) {
  EXPECT_EQ(run({"cubic", "family", "--field", "7"}).code, kExitViolation);
  EXPECT_EQ(run({"cubic", "family", "--field", "5^2"}).code, kExitOk);
  EXPECT_EQ(run({"cases", "--field", "13", "--u", "2", "--a", "1", "--b", "3"}).code, kExitOk);
}

TEST(Cli, WitnessKimCubicCharsum) {
  const auto w = run({"witness", "--field", "131", "--u", "2"});
  EXPECT_EQ(w.code, kExitOk);
  EXPECT_NE(w.out.find("verified yes"), std::string::npos) << w.out;
  const auto k = run({"kim", "--field", "3^3", "--k", "1", "--from-U", "g^5"});
  EXPECT_EQ(k.code, kExitOk);
  EXPECT_NE(k.out.find("4 roots (agree with enumeration)"), std::string::npos) << k.out;
  const auto c = run({"cubic", "solve", "--field", "13", "--coeffs", "-6,11,-6,1"});
  EXPECT_EQ(c.code, kExitOk);
  const auto b = run({"charsum", "--field", "5^2", "--u", "g^3", "--k", "1", "--bench", "--reps", "1"});
  EXPECT_EQ(b.code, kExitOk);
  EXPECT_EQ(b.out.rfind("field,method,wall_ns,result_checksum", 0), 0u) << b.out;
}

TEST(Cli, GeometryCommands) {
  const auto t = run({"threshold", "--genus", "25", "--excluded", "112"});
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_NE(t.out.find("q0 = 2719"), std::string::npos);
  const auto g = run({"genus", "--steps", std::string(APNFORGE_FIXTURE_DIR) + "/geom/system2_tower.json"});
  EXPECT_EQ(g.code, kExitOk);
  EXPECT_NE(g.out.find("genera: 0 1 3 9 25 25"), std::string::npos) << g.out;
}

TEST(Fixtures, ShippedTowersMatchTheirDerivation) {
  const std::string dir = std::string(APNFORGE_FIXTURE_DIR) + "/geom/";
  EXPECT_EQ(tower_fixture_json(load_tower_fixture(dir + "system2_tower.json")),
            tower_fixture_json(derive_system2_fixture()));
  EXPECT_EQ(tower_fixture_json(load_tower_fixture(dir + "kim_tower_3_3.json")),
            tower_fixture_json(derive_kim_fixture(3, 3, 1)));
  EXPECT_EQ(tower_fixture_json(load_tower_fixture(dir + "kim_tower_5_3.json")),
            tower_fixture_json(derive_kim_fixture(5, 3, 1)));
  const auto fx = load_tower_fixture(dir + "system2_tower.json");
  EXPECT_EQ(tower_genus_sequence(fx.base_genus, fx.steps), (std::vector<std::int64_t>{0, 1, 3, 9, 25, 25}));
  EXPECT_THROW(load_tower_fixture(dir + "missing.json"), Error);
}

TEST(Runs, JsonlSinkDropsTornLine) {
  const fs::path dir = scratch("jsonl");
  const fs::path p = dir / "s.jsonl";
  {
    JsonlSink s(p);
    s.write({{"i", 1}});
    s.write({{"i", 2}});
  }
  std::ofstream(p, std::ios::app) << "{\"i\": 3, \"tor";
  EXPECT_EQ(JsonlSink::read_all(p).size(), 2u);
  {
    JsonlSink s(p);
    s.write({{"i", 4}});
  }
  const auto all = JsonlSink::read_all(p);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[2]["i"], 4);
  EXPECT_TRUE(JsonlSink::read_all(dir / "absent.jsonl").empty());
}

TEST(Runs, DisproveResumesToTheSameDigest) {
  const fs::path a = scratch("resume_a"), b = scratch("resume_b");
  DisproveOptions o;
  o.lo = 3;
  o.hi = 61;
  o.out_dir = a;
  const auto whole = run_disprove(o);
  ASSERT_TRUE(whole.complete);

  o.out_dir = b;
  o.field_limit = 4;
  const auto part = run_disprove(o);
  EXPECT_FALSE(part.complete);
  EXPECT_FALSE(fs::exists(part.summary_path));
  // Simulate a crash in the middle of a record.
  std::ofstream(part.stream_path, std::ios::app) << "{\"q\": 27, \"u\"";
  o.field_limit = UINT64_MAX;
  const auto rest = run_disprove(o);
  ASSERT_TRUE(rest.complete);
  EXPECT_EQ(rest.summary["digest"], whole.summary["digest"]);
  EXPECT_EQ(rest.summary["records_digest"], whole.summary["records_digest"]);
  EXPECT_EQ(rest.summary["pairs"], whole.summary["pairs"]);
  EXPECT_EQ(whole.apn_above_125, 0u);
  EXPECT_GT(whole.summary["apn_pairs"].get<std::uint64_t>(), 0u);
}

TEST(Runs, ReportFormats) {
  const fs::path dir = scratch("report");
  EXPECT_EQ(run({"report", "--runs", (dir / "none").string()}).code, kExitUsage);
  EXPECT_THROW(collect_runs(dir), Error);
  ASSERT_EQ(run({"disprove", "--lo", "3", "--hi", "13", "--out", dir.string()}).code, kExitOk);
  for (const char* f : {"json", "csv", "md"}) {
    const auto r = run({"report", "--runs", dir.string(), "--format", f});
    EXPECT_EQ(r.code, kExitOk) << f;
    const fs::path p = dir / (std::string("report.") + f);
    ASSERT_TRUE(fs::exists(p));
    EXPECT_NE(slurp(p).find("disprove_3_13"), std::string::npos) << f;
  }
  EXPECT_EQ(json::parse(slurp(dir / "report.json"))["runs"].size(), 1u);
  EXPECT_EQ(run({"report", "--runs", dir.string(), "--format", "xml"}).code, kExitUsage);
}

TEST(Runs, DigestIsDeterministic) {
  const json a = {{"x", 1}, {"y", {1, 2, 3}}};
  EXPECT_EQ(digest_of(a), digest_of(json::parse(a.dump())));
  EXPECT_NE(digest_of(a), digest_of(json{{"y", {1, 2, 3}}, {"x", 1}}));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

}  // namespace
}  // namespace apnforge::cli
