#include <gtest/gtest.h>

#include <random>

#include "apnforge/cases.hpp"
#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"
#include "oracle.hpp"

namespace apnforge {
namespace {

std::vector<Field> fields_up_to_49() {
  std::vector<Field> out;
  for (std::uint64_t q : oracle::odd_prime_powers(5, 49)) {
    const auto pn = odd_prime_power(q);
    out.push_back(Field::build(pn->first, pn->second));
  }
  return out;
}

// Solutions x of F(x + a) - F(x) = b from a literal value table.
std::vector<Fe> brute_solutions(const oracle::Naive& N, const std::vector<Fe>& vals, Fe a, Fe b) {
  std::vector<Fe> out;
  for (std::uint32_t x = 0; x < N.q(); ++x)
    if (N.sub(vals[N.add(Fe{x}, a).v], vals[x]) == b) out.push_back(Fe{x});
  return out;
}

TEST(Cases, SoundAndCompleteUpTo49) {
  for (const Field& F : fields_up_to_49()) {
    const oracle::Naive N(F);
    for (Fe u : family_u_range(F)) {
      const auto vals = oracle::values(N, oracle::sq2_terms(N, u));
      for (std::uint32_t a = 1; a < F.q(); ++a) {
        for (std::uint32_t b = 0; b < F.q(); ++b) {
          const auto c = analyze_cases(F, u, Fe{a}, Fe{b});
          const auto want = brute_solutions(N, vals, Fe{a}, Fe{b});
          ASSERT_EQ(c.solutions(), want) << F.descriptor() << " u=" << u.v << " a=" << a << " b=" << b;
          ASSERT_EQ(c.predicted_total, want.size());
          ASSERT_EQ(sq2_solution_count(F, u, Fe{a}, Fe{b}), want.size());
        }
      }
    }
  }
}

TEST(Cases, CandidatesCarryTheirCharacters) {
  const Field F = Field::build(29, 1);
  const oracle::Naive N(F);
  const Fe u = F.from_int(5);
  for (std::uint32_t b = 0; b < F.q(); ++b) {
    const auto c = analyze_cases(F, u, F.one(), Fe{b});
    for (const auto& rec : c.cases) {
      for (const auto& cd : rec.candidates) {
        EXPECT_EQ(cd.eta_x, N.eta(cd.x));
        EXPECT_EQ(cd.eta_xa, N.eta(N.add(cd.x, F.one())));
        EXPECT_EQ(cd.valid, cd.eta_x == rec.t_x && cd.eta_xa == rec.t_a);
      }
    }
    ASSERT_EQ(c.boundary.size(), 2u);
  }
}

// Two valid roots force the corrected product conditions; the converse fails
// for equal-sign pairs on the wrong side. Printed and corrected forms agree
// when 2 is a square.
TEST(Cases, CorrectedQuadraticPredicateIsNecessary) {
  std::uint64_t converse_failures = 0;
  for (const Field& F : fields_up_to_49()) {
    const bool two_square = F.is_square(F.from_int(2));
    for (Fe u : family_u_range(F)) {
      for (Fe a : {F.one(), F.first_nonsquare()}) {
        for (std::uint32_t b = 0; b < F.q(); ++b) {
          const auto c = analyze_cases(F, u, a, Fe{b});
          for (int i : {2, 3}) {
            const auto& rec = c.cases[i];
            if (rec.valid_count == 2) EXPECT_TRUE(rec.predicate_corrected) << F.descriptor() << " b=" << b;
            if (rec.predicate_corrected && rec.valid_count != 2) ++converse_failures;
            if (two_square) EXPECT_EQ(rec.predicate, rec.predicate_corrected);
          }
        }
      }
    }
  }
  EXPECT_GT(converse_failures, 0u);
}

TEST(Cases, RejectsDegenerateInputs) {
  const Field F = Field::build(11, 1);
  EXPECT_THROW(analyze_cases(F, F.one(), F.one(), F.zero()), Error);
  EXPECT_THROW(analyze_cases(F, F.from_int(2), F.zero(), F.zero()), Error);
}

TEST(UMinus3, BoundOnFiveModEight) {
  for (std::uint64_t q : oracle::odd_prime_powers(5, 200)) {
    if (q % 8 != 5) continue;
    const auto pn = odd_prime_power(q);
    const Field F = Field::build(pn->first, pn->second);
    if (F.p() == 3) continue;
    const auto s = u_minus3_summary(F);
    EXPECT_LE(s.max, 4u) << q;
    const Fe u = F.from_int(-3);
    EXPECT_EQ(sq2_solution_count(F, u, s.argmax_a, s.argmax_b), s.max);
    EXPECT_EQ(spectrum(F, make_family(F, {Family::kSq2, u})).du, s.max) << q;
  }
  EXPECT_THROW(u_minus3_summary(Field::build(7, 1)), Error);
}

TEST(System2, WitnessesVerifyAndReachThree) {
  std::mt19937 rng(11);
  for (std::uint64_t q : {127u, 131u, 169u, 243u, 343u, 361u}) {
    const auto pn = odd_prime_power(q);
    const Field F = Field::build(pn->first, pn->second);
    const oracle::Naive N(F);
    for (int t = 0; t < 4; ++t) {
      const auto us = family_u_range(F);
      const Fe u = us[rng() % us.size()];
      if (u == F.from_int(3)) continue;
      const auto w = find_system2_witness(F, u);
      ASSERT_TRUE(w.has_value()) << q << " u=" << u.v;
      EXPECT_TRUE(verify_system2(F, *w));
      EXPECT_EQ(N.eta(w->xi), -1);
      const auto vals = oracle::values(N, oracle::sq2_terms(N, u));
      const auto sols = brute_solutions(N, vals, w->a, w->b);
      EXPECT_GE(sols.size(), 3u);
      for (Fe r : w->roots) EXPECT_TRUE(std::find(sols.begin(), sols.end(), r) != sols.end());
    }
  }
}

TEST(System2, VanishingCoordinatesAreAdmitted) {
  // No witness here has X, T, U and V all nonzero.
  const Field F = Field::build(281, 1);
  const Fe u = F.gen_pow(194);
  const auto w = find_system2_witness(F, u);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verify_system2(F, *w));
  EXPECT_TRUE(w->U == F.zero() || w->V == F.zero());
  EXPECT_GE(sq2_solution_count(F, u, w->a, w->b), 3u);
}

TEST(System2, TamperedWitnessFailsVerification) {
  const Field F = Field::build(131, 1);
  auto w = find_system2_witness(F, F.from_int(2));
  ASSERT_TRUE(w.has_value());
  w->b = F.add(w->b, F.one());
  EXPECT_FALSE(verify_system2(F, *w));
}

TEST(System2, RequiresNonsquareXi) {
  const Field F = Field::build(131, 1);
  try {
    find_system2_witness(F, F.from_int(2), F.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonsquareXiRequired);
  }
}

TEST(U3Branch, FindsThreeSolutions) {
  for (std::uint64_t q : oracle::odd_prime_powers(127, 400)) {
    const auto pn = odd_prime_power(q);
    if (pn->first == 3) continue;
    const Field F = Field::build(pn->first, pn->second);
    const auto r = u3_branch_witness(F);
    ASSERT_TRUE(r.has_value()) << q;
    EXPECT_GE(r->count, 3u);
    EXPECT_EQ(sq2_solution_count(F, F.from_int(3), r->a, r->b), r->count);
  }
  EXPECT_THROW(u3_branch_witness(Field::build(3, 5)), Error);
}

}  // namespace
}  // namespace apnforge
