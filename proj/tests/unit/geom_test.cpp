#include <gtest/gtest.h>

#include <map>

#include "apnforge/error.hpp"
#include "apnforge/geom.hpp"
#include "oracle.hpp"

namespace apnforge {
namespace {

TEST(Kummer, GenusOfSmallCovers) {
  EXPECT_EQ(kummer_genus({2, 0, {{4, 1}}, ""}), 1);
  EXPECT_EQ(kummer_genus({2, 0, {{1, 1}, {1, 1}, {1, 1}, {1, 1}}, ""}), 1);
  EXPECT_EQ(kummer_genus({2, 1, {{4, 1}}, ""}), 3);
  EXPECT_EQ(kummer_genus({2, 1, {}, ""}), 1);
  EXPECT_EQ(kummer_genus({3, 0, {{3, 1}}, ""}), 1);
  // r = n places contribute nothing.
  EXPECT_EQ(kummer_genus({4, 0, {{4, 1}, {2, 2}, {2, 4}}, ""}), kummer_genus({4, 0, {{4, 1}, {2, 2}}, ""}));
  EXPECT_EQ(kummer_genus({4, 0, {{4, 1}, {2, 2}}, ""}), 5);
}

TEST(Kummer, RejectsBadData) {
  try {
    kummer_genus({2, 0, {{3, 1}}, ""});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonIntegerGenus);
  }
  EXPECT_THROW(kummer_genus({4, 0, {{1, 3}}, ""}), Error);
  EXPECT_THROW(kummer_genus({0, 0, {}, ""}), Error);
}

TEST(Kummer, MonotoneInRamification) {
  for (std::uint32_t n : {2u, 3u, 4u, 6u}) {
    for (std::int64_t g = 0; g < 4; ++g) {
      RamificationDatum d{n, g, {}, ""};
      for (std::uint32_t r = 1; r < n; ++r) {
        if (n % r != 0) continue;
        RamificationDatum more = d;
        more.places.push_back({2, r});
        EXPECT_GE(kummer_genus(more), kummer_genus(d));
        d = more;
      }
    }
  }
}

TEST(Kummer, SequenceChecksBaseGenus) {
  EXPECT_EQ(tower_genus_sequence(0, {}), (std::vector<std::int64_t>{0}));
  const std::vector<RamificationDatum> one{{2, 0, {{4, 1}}, ""}};
  EXPECT_EQ(tower_genus_sequence(0, one), (std::vector<std::int64_t>{0, 1}));
  const std::vector<RamificationDatum> bad{{2, 0, {{4, 1}}, ""}, {2, 0, {{4, 1}}, ""}};
  EXPECT_THROW(tower_genus_sequence(0, bad), Error);
}

TEST(HasseWeil, IntervalMatchesIntegerSquareRoot) {
  for (std::uint64_t q : oracle::odd_prime_powers(3, 3000)) {
    for (std::int64_t g : {0, 1, 2, 25}) {
      const auto iv = hasse_weil_interval(g, q);
      const auto w = static_cast<std::int64_t>(oracle::isqrt_floor(4 * g * g * q));
      EXPECT_EQ(iv.lower, static_cast<std::int64_t>(q) + 1 - w);
      EXPECT_EQ(iv.upper, static_cast<std::int64_t>(q) + 1 + w);
    }
  }
  EXPECT_EQ(hasse_weil_interval(0, 49).lower, 50);
  // Perfect squares: 2g sqrt(q) is an integer.
  EXPECT_EQ(hasse_weil_interval(3, 49).lower, 50 - 42);
  EXPECT_EQ(hasse_weil_interval(25, 2809).lower, 2810 - 2650);
}

// m > 2g sqrt(q) iff m > floor(2g sqrt(q)) for integer m.
bool exact_oracle(std::int64_t g, std::int64_t B, std::uint64_t q) {
  return static_cast<std::int64_t>(q) + 1 - B > static_cast<std::int64_t>(oracle::isqrt_floor(4 * g * g * q));
}
bool printed_oracle(std::int64_t g, std::int64_t B, std::uint64_t q) {
  return static_cast<std::int64_t>(q) - (B - 1) > static_cast<std::int64_t>(oracle::isqrt_floor(4 * g * g * q));
}

TEST(Threshold, PredicatesMatchOracle) {
  for (std::uint64_t q = 2; q < 4000; ++q) {
    if (!oracle::prime_power_naive(q)) continue;
    for (auto [g, B] : std::vector<std::pair<std::int64_t, std::int64_t>>{{25, 112}, {1, 0}, {3, 10}, {9, 64}}) {
      ASSERT_EQ(threshold_predicate_exact(g, B, q), exact_oracle(g, B, q)) << q;
      ASSERT_EQ(threshold_predicate_printed(g, B, q), printed_oracle(g, B, q)) << q;
    }
  }
  // (2720 - 112)^2 > 2500 * 2719.
  EXPECT_TRUE(threshold_predicate_exact(25, 112, 2719));
  EXPECT_FALSE(threshold_predicate_exact(25, 112, 2713));
  // Boundary: q = 2809 = 53^2 gives m^2 = 4 g^2 q exactly when m = 2650.
  EXPECT_FALSE(threshold_predicate_exact(25, 2810 - 2650, 2809));
  EXPECT_FALSE(threshold_predicate_exact(25, 2810 - 2649, 2809));
  EXPECT_TRUE(threshold_predicate_exact(25, 2810 - 2651, 2809));
}

TEST(Threshold, SystemTwoValue) {
  const auto t = solvability_threshold(25, 112);
  EXPECT_EQ(t.q0_exact, 2719u);
  EXPECT_EQ(t.q0_printed, 2719u);
  EXPECT_EQ(t.predecessor, 2713u);
}

TEST(Threshold, MinimalAndStable) {
  for (auto [g, B] : std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 4}, {2, 7}, {9, 64}, {29, 200}}) {
    const auto t = solvability_threshold(g, B);
    EXPECT_TRUE(oracle::prime_power_naive(t.q0_exact));
    EXPECT_TRUE(exact_oracle(g, B, t.q0_exact));
    if (t.predecessor > 1) {
      EXPECT_FALSE(exact_oracle(g, B, t.predecessor));
      for (std::uint64_t q = t.predecessor + 1; q < t.q0_exact; ++q) EXPECT_FALSE(oracle::prime_power_naive(q));
    }
    for (std::uint64_t q = t.q0_exact; q < t.q0_exact + 2000; ++q)
      if (oracle::prime_power_naive(q)) ASSERT_TRUE(exact_oracle(g, B, q)) << g << " " << B << " " << q;
    for (std::uint64_t q = t.q0_printed; q < t.q0_printed + 2000; ++q)
      if (oracle::prime_power_naive(q)) ASSERT_TRUE(printed_oracle(g, B, q));
  }
  EXPECT_THROW(solvability_threshold(-1, 0), Error);
}

TEST(Tower, SystemTwoGenera) {
  const Field F = Field::build(10007, 1);
  const auto steps = system2_tower_steps(F, F.from_int(2), F.one(), F.from_int(5));
  const auto d = derive_tower(F, steps);
  EXPECT_EQ(d.genera, (std::vector<std::int64_t>{0, 1, 3, 9, 25, 25}));
  EXPECT_EQ(tower_genus_sequence(0, d.steps), d.genera);
}

// Genus of the compositum of y_j^2 = f_j, j < i, over the projective line by
// Riemann-Hurwitz: every ramified point has index 2 and 2^{i-1} preimages.
// Roots are found by enumeration in an extension where every f_j splits.
std::vector<std::int64_t> double_cover_genera(const oracle::Naive& N, const std::vector<std::vector<Fe>>& fs) {
  std::map<std::uint32_t, std::vector<int>> val;  // point -> multiplicity per f
  std::vector<int> inf(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) {
    inf[j] = -static_cast<int>(fs[j].size() - 1);
    for (Fe r : oracle::roots(N, fs[j])) {
      std::vector<Fe> c = fs[j];
      int m = 0;
      for (;;) {
        // Synthetic division by (x - r).
        std::vector<Fe> qt(c.size() - 1);
        Fe carry{0};
        for (std::size_t t = c.size(); t-- > 1;) {
          carry = N.add(c[t], N.mul(carry, r));
          qt[t - 1] = carry;
        }
        if (N.add(c[0], N.mul(carry, r)).v != 0) break;
        ++m;
        c = qt;
      }
      auto& slot = val[r.v];
      slot.resize(fs.size());
      slot[j] = m;
    }
  }
  std::vector<std::int64_t> out{0};
  for (std::size_t i = 1; i <= fs.size(); ++i) {
    std::int64_t ramified = 0;
    auto odd = [&](const std::vector<int>& v) {
      for (std::size_t j = 0; j < i; ++j)
        if (v[j] % 2 != 0) return true;
      return false;
    };
    for (auto& [pt, v] : val) ramified += odd(v);
    ramified += odd(inf);
    const std::int64_t deg = std::int64_t{1} << i;
    const std::int64_t twice = -2 * deg + ramified * (deg / 2);
    out.push_back(twice / 2 + 1);
  }
  return out;
}

TEST(Tower, DerivationMatchesRiemannHurwitzCount) {
  const Field F = Field::build(13, 1);
  const Field E = Field::build(13, 4);
  const oracle::Naive N(E);
  int checked = 0;
  for (std::uint32_t u = 2; u < 12 && checked < 6; ++u) {
    for (std::uint32_t a = 1; a < 13 && checked < 6; a += 4) {
      const Fe au1 = F.mul(F.from_int(a), F.add(F.from_int(u), F.one()));
      if (au1 == F.zero() || !F.is_square(au1)) continue;
      const Fe xi = F.first_nonsquare();
      const auto steps = system2_tower_steps(F, F.from_int(u), F.from_int(a), xi);
      const auto d = derive_tower(F, steps);
      std::vector<std::vector<Fe>> fs;
      for (std::size_t s = 0; s + 1 < steps.size(); ++s) {
        std::vector<Fe> c;
        for (Fe x : steps[s].f.num) c.push_back(N.from_int(x.v));
        fs.push_back(c);
      }
      auto want = double_cover_genera(N, fs);
      want.push_back(want.back());  // the last step has degree one
      EXPECT_EQ(d.genera, want) << "u=" << u << " a=" << a;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 6);
}

TEST(Tower, KimFirstStepRamifiesOverTheRootsOfD) {
  // D(U) = (U - U^q)^{q-1} + 1 has q(q-1) simple roots and even degree.
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {5, 3}}) {
    const Field F = Field::build(p, n);
    const auto steps = kim_tower_steps(F, 1, F.generator(), F.first_nonsquare());
    const auto d = derive_tower(F, steps);
    const std::int64_t q = p;
    ASSERT_EQ(d.genera.size(), 5u);
    EXPECT_EQ(d.genera[1], q * (q - 1) / 2 - 1);
    for (std::size_t i = 1; i < d.genera.size(); ++i) EXPECT_GE(d.genera[i], d.genera[i - 1]);
    EXPECT_EQ(tower_genus_sequence(0, d.steps), d.genera);
  }
  const Field F = Field::build(3, 3);
  EXPECT_THROW(kim_tower_steps(F, 0, F.generator(), F.first_nonsquare()), Error);
  EXPECT_THROW(kim_tower_steps(F, 1, F.one(), F.first_nonsquare()), Error);
  EXPECT_THROW(kim_tower_steps(F, 1, F.generator(), F.one()), Error);
}

TEST(Tower, RepeatedFunctionDoesNotRamifyAgain) {
  const Field F = Field::build(101, 1);
  const RationalFunction f{{F.from_int(3), F.zero(), F.zero(), F.one()}, {F.one()}};
  const std::vector<KummerStep> steps{{2, f, "y^2 = f"}, {2, f, "z^2 = f"}};
  const auto d = derive_tower(F, steps);
  // Cubic: three finite points and infinity ramify once.
  EXPECT_EQ(d.genera[1], 1);
  EXPECT_EQ(d.genera[2], 2 * d.genera[1] - 1);
}

}  // namespace
}  // namespace apnforge
