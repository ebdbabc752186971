#include <gtest/gtest.h>

#include <set>

#include "apnforge/error.hpp"
#include "apnforge/tables.hpp"
#include "oracle.hpp"

namespace apnforge {
namespace {

std::string fixture(int table) {
  return std::string(APNFORGE_FIXTURE_DIR) + "/tables/table" + std::to_string(table) + ".csv";
}

TEST(TableCsv, ParsesQuotedSpectra) {
  const auto rows = parse_table_csv(
      "p,n,u_label,spectrum\n"
      "\n"
      "# comment\n"
      "5,1,2,\"{ 0^{4}, 1^{12}, 2^{4} }\"\n"
      " 7 , 1 , w^{3} , {0^12}\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].p, 5u);
  EXPECT_EQ(rows[0].u_label, "2");
  EXPECT_EQ(rows[0].spectrum, "{ 0^{4}, 1^{12}, 2^{4} }");
  EXPECT_EQ(rows[0].line, 4u);
  EXPECT_EQ(rows[1].u_label, "w^{3}");
  EXPECT_EQ(rows[1].line, 5u);
  EXPECT_EQ(parse_spectrum(rows[0].spectrum), (Spectrum{{0, 4}, {1, 12}, {2, 4}}));
}

TEST(TableCsv, HeaderIsOptional) {
  EXPECT_EQ(parse_table_csv("5,1,2,{0^4}\n").size(), 1u);
}

TEST(TableCsv, RejectsMalformedInput) {
  for (const char* bad : {"p,n,u_label,spectrum\n5,1,2\n", "p,n,u_label,spectrum\nx,1,2,{0^4}\n",
                          "p,n,u_label,spectrum\n5,1,2,\"{0^4}\n"}) {
    try {
      parse_table_csv(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << bad;
    }
  }
  try {
    load_table_csv("/nonexistent/table9.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFixtureMissing);
  }
  EXPECT_THROW(table_family(4), Error);
}

TEST(Tables, FirstTwoMatchOnTheFullDomain) {
  for (int t : {1, 2}) {
    const auto rows = load_table_csv(fixture(t));
    const auto tc = verify_table(t, rows);
    EXPECT_TRUE(tc.pass);
    EXPECT_EQ(tc.body_matches, rows.size());
    EXPECT_EQ(tc.caption_matches, 0u);
    for (const auto& r : tc.rows) {
      EXPECT_EQ(r.match, RowMatch::kFull) << r.row.line;
      EXPECT_TRUE(r.restrictions.empty());
    }
  }
  EXPECT_EQ(load_table_csv(fixture(1)).size(), 24u);
  EXPECT_EQ(load_table_csv(fixture(2)).size(), 30u);
}

TEST(Tables, PrintedRowsAgreeWithBruteForce) {
  for (int t : {1, 2}) {
    const auto tc = verify_table(t, load_table_csv(fixture(t)));
    for (const auto& r : tc.rows) {
      const Field F = Field::build(r.row.p, r.row.n);
      const oracle::Naive N(F);
      const auto want = oracle::spectrum(N, oracle::values(N, oracle::sq2_terms(N, r.u)));
      EXPECT_EQ(parse_spectrum(r.row.spectrum), want) << "table " << t << " line " << r.row.line;
    }
  }
}

TEST(Tables, ThirdReconcilesShortRowsByOneDroppedShift) {
  const auto rows = load_table_csv(fixture(3));
  const auto tc = verify_table(3, rows);
  EXPECT_TRUE(tc.pass);
  std::size_t restricted = 0;
  for (const auto& r : tc.rows) {
    const Field F = Field::build(r.row.p, r.row.n);
    std::uint64_t printed = 0;
    for (auto [c, m] : r.expected) printed += m;
    if (r.match == RowMatch::kRestricted) {
      ++restricted;
      EXPECT_EQ(printed, F.q() * (F.q() - 1) - F.q());
      const oracle::Naive N(F);
      const auto vals = oracle::values(N, oracle::cube3_terms(N, r.u));
      // Dropping the a = 1 row of the full table.
      EXPECT_EQ(oracle::spectrum(N, vals, {1}), r.expected) << r.row.line;
      EXPECT_EQ(oracle::spectrum(N, vals), r.body);
    } else {
      EXPECT_EQ(r.match, RowMatch::kFull);
      EXPECT_EQ(printed, F.q() * (F.q() - 1));
    }
  }
  EXPECT_EQ(restricted, 23u);
  EXPECT_EQ(tc.body_matches, 3u);
}

TEST(Tables, CorruptedRowFails) {
  auto rows = load_table_csv(fixture(1));
  rows[3].spectrum = "{ 0^{12}, 1^{18}, 2^{11}, 3^{1} }";
  const auto tc = verify_table(1, rows);
  EXPECT_FALSE(tc.pass);
  EXPECT_FALSE(tc.rows[3].pass);
  EXPECT_EQ(tc.rows[3].match, RowMatch::kNone);
  EXPECT_EQ(tc.body_matches, rows.size() - 1);
}

TEST(Tables, SpectrumWithoutZeroTarget) {
  const Field F = Field::build(7, 1);
  const oracle::Naive N(F);
  const Fe u = F.from_int(2);
  const auto vals = oracle::values(N, oracle::sq2_terms(N, u));
  EXPECT_EQ(spectrum_without_b0(F, make_family(F, {Family::kSq2, u})), oracle::spectrum(N, vals, {}, true));
}

TEST(Claims, SquareFamilyProse) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
    const Field F = Field::build(p, n);
    const auto cs = sq2_prose_claims(F);
    ASSERT_FALSE(cs.empty());
    for (const auto& c : cs) {
      const bool expected_false = p == 5 && n == 2 && c.claim.rfind("DU values", 0) == 0;
      EXPECT_EQ(c.holds, !expected_false) << F.descriptor() << " " << c.claim << " observed " << c.observed;
    }
  }
  // The failing DU claim, by brute force.
  const Field F = Field::build(5, 2);
  const oracle::Naive N(F);
  std::set<std::uint32_t> dus;
  for (Fe u : family_u_range(F)) dus.insert(oracle::du_of(oracle::spectrum(N, oracle::values(N, oracle::sq2_terms(N, u)))));
  EXPECT_EQ(dus, (std::set<std::uint32_t>{2, 3, 5}));
  EXPECT_TRUE(sq2_prose_claims(Field::build(17, 1)).empty());
}

TEST(Claims, GeneralFamilyProse) {
  for (const auto& c : genjk_prose_claims()) {
    const auto r = check_genjk_claim(c);
    if (c.p == 5 && c.n == 2 && c.a == 1 && c.b == 1) {
      EXPECT_FALSE(r.holds);
      EXPECT_EQ(r.observed, (std::vector<std::uint32_t>{5, 13}));
      EXPECT_EQ(r.du_without_u, 9u);
      const Field F = Field::build(5, 2);
      const oracle::Naive N(F);
      std::set<std::uint32_t> dus;
      for (Fe u : family_u_range(F))
        dus.insert(oracle::du_of(oracle::spectrum(N, oracle::values(N, oracle::genjk_terms(N, 5, u, 1, 1)))));
      EXPECT_EQ(std::vector<std::uint32_t>(dus.begin(), dus.end()), r.observed);
    } else {
      EXPECT_TRUE(r.holds) << c.p << "^" << c.n << " a=" << c.a << " b=" << c.b;
    }
  }
}

}  // namespace
}  // namespace apnforge
