#include <gtest/gtest.h>

#include <random>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"
#include "apnforge/kim.hpp"
#include "oracle.hpp"

namespace apnforge {
namespace {

struct Pnk {
  std::uint32_t p, n, k;
};

std::vector<Pnk> small_cases() { return {{3, 2, 1}, {5, 2, 1}, {3, 3, 1}, {3, 3, 2}, {7, 2, 1}, {3, 4, 1}, {3, 4, 3}}; }

// Roots of X^{q+1} + X + A by literal evaluation.
std::vector<Fe> kim_brute(const oracle::Naive& N, std::uint64_t q, Fe A) {
  std::vector<Fe> out;
  for (std::uint32_t x = 0; x < N.q(); ++x)
    if (N.add(N.add(N.pow(Fe{x}, q + 1), Fe{x}), A).v == 0) out.push_back(Fe{x});
  return out;
}

TEST(Kim, ParametrizedRootsAreAllRoots) {
  for (auto [p, n, k] : small_cases()) {
    const Field F = Field::build(p, n);
    const oracle::Naive N(F);
    const std::uint64_t q = oracle::ipow(p, k);
    const std::uint32_t d = std::gcd(n, k);
    const auto us = valid_U_set(F, k);
    // F_{p^{2d}} swallows the whole field exactly when n divides 2d.
    ASSERT_EQ(us.empty(), (2 * d) % n == 0);
    for (Fe U : us) {
      const Fe A = kim_A_from_U(F, k, U);
      auto roots = kim_roots_from_U(F, k, U);
      ASSERT_EQ(roots.size(), oracle::ipow(p, d) + 1);
      std::sort(roots.begin(), roots.end());
      EXPECT_TRUE(std::adjacent_find(roots.begin(), roots.end()) == roots.end());
      EXPECT_EQ(roots, kim_brute(N, q, A)) << F.descriptor() << " k=" << k << " U=" << U.v;
      EXPECT_EQ(solve_kim_brute(F, k, A), roots);
      EXPECT_EQ(kim_instance_from_U(F, k, U).d, d);
    }
  }
}

TEST(Kim, ValidUAvoidsTheSubfield) {
  for (auto [p, n, k] : small_cases()) {
    const Field F = Field::build(p, n);
    const oracle::Naive N(F);
    const std::uint32_t d2 = 2 * std::gcd(n, k);
    const auto us = valid_U_set(F, k);
    std::uint64_t expected = 0;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
      const bool in_sub = N.pow(Fe{x}, oracle::ipow(p, d2)) == Fe{x};
      expected += !in_sub;
    }
    EXPECT_EQ(us.size(), expected) << F.descriptor() << " k=" << k;
    for (Fe U : us) EXPECT_FALSE(F.in_subfield(U, d2));
  }
}

TEST(Kim, SubfieldUIsRejected) {
  const Field F = Field::build(3, 3);
  try {
    kim_A_from_U(F, 1, F.from_int(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUInSubfield);
  }
  EXPECT_THROW(kim_roots_from_U(F, 0, F.generator()), Error);
}

TEST(KimReduction, MappedRootsSolveTheCaseEquation) {
  std::mt19937 rng(4);
  for (auto [p, n, k] : small_cases()) {
    const Field F = Field::build(p, n);
    for (int t = 0; t < 30; ++t) {
      const Fe u{std::uint32_t(rng() % F.q())};
      const Fe a{std::uint32_t(1 + rng() % (F.q() - 1))};
      const Fe b{std::uint32_t(rng() % F.q())};
      if (F.frobenius(u, k) == u) continue;
      for (DCase tag : {DCase::kD1m1, DCase::kDm11}) {
        DCaseReduction red;
        try {
          red = reduce_d_case(F, k, tag, u, a, b);
        } catch (const Error& e) {
          ASSERT_EQ(e.code(), ErrorCode::kDegenerateDenominator);
          continue;
        }
        EXPECT_EQ(red.A, kim_A_closed_form(F, k, tag, u, a, b));
        auto mapped = std::vector<Fe>{};
        for (Fe X : solve_kim_brute(F, k, red.A)) mapped.push_back(F.sub(F.mul(red.c, X), red.r));
        std::sort(mapped.begin(), mapped.end());
        EXPECT_EQ(mapped, d_case_roots_brute(F, k, tag, u, a, b)) << F.descriptor() << " " << dcase_name(tag);
        EXPECT_EQ(b_for_target_A(F, k, tag, u, a, red.A), b);
      }
    }
  }
}

TEST(KimReduction, CaseEquationMatchesDerivative) {
  // With eta signs applied, the four case equations partition the DDT entry.
  const Field F = Field::build(3, 3);
  const oracle::Naive N(F);
  const std::uint32_t k = 1;
  const Fe u = F.generator();
  const auto vals = oracle::values(N, oracle::genjk_terms(N, 3, u, k, k));
  for (std::uint32_t a = 1; a < F.q(); ++a) {
    for (std::uint32_t b = 0; b < F.q(); ++b) {
      std::uint64_t direct = 0;
      for (std::uint32_t x = 0; x < F.q(); ++x)
        direct += N.sub(vals[N.add(Fe{x}, Fe{a}).v], vals[x]) == Fe{b};
      std::uint64_t split = 0;
      for (DCase tag : {DCase::kD11, DCase::kDm1m1, DCase::kD1m1, DCase::kDm11}) {
        const int ta = tag == DCase::kD11 || tag == DCase::kD1m1 ? 1 : -1;
        const int tx = tag == DCase::kD11 || tag == DCase::kDm11 ? 1 : -1;
        for (Fe x : d_case_roots_brute(F, k, tag, u, Fe{a}, Fe{b}))
          split += N.eta(x) == tx && N.eta(N.add(x, Fe{a})) == ta;
      }
      // x in {0, -a} carry eta = 0 and are not in any case.
      for (Fe x : {Fe{0}, N.neg(Fe{a})}) split += N.sub(vals[N.add(x, Fe{a}).v], vals[x.v]) == Fe{b};
      ASSERT_EQ(split, direct) << "a=" << a << " b=" << b;
    }
  }
}

TEST(KimLinear, KernelHasSizeOneOrPd) {
  std::mt19937 rng(8);
  for (auto [p, n, k] : small_cases()) {
    const Field F = Field::build(p, n);
    const std::uint64_t pd = oracle::ipow(p, std::gcd(n, k));
    for (int t = 0; t < 20; ++t) {
      const Fe u{std::uint32_t(rng() % F.q())};
      if (family_excluded_u(F, u)) continue;
      const Fe a{std::uint32_t(1 + rng() % (F.q() - 1))};
      const Fe b{std::uint32_t(rng() % F.q())};
      for (DCase tag : {DCase::kD11, DCase::kDm1m1}) {
        const auto c = linear_case_root_count(F, k, tag, u, a, b);
        EXPECT_TRUE(c.kernel == 1 || c.kernel == pd) << c.kernel;
        EXPECT_TRUE(c.roots == 0 || c.roots == c.kernel);
      }
    }
  }
}

TEST(KimLinear, MinusOnePowerMatchesEnumeration) {
  for (auto [p, n, k] : small_cases()) {
    const Field F = Field::build(p, n);
    const oracle::Naive N(F);
    bool found = false;
    for (std::uint32_t y = 1; y < F.q() && !found; ++y)
      found = N.pow(Fe{y}, oracle::ipow(p, k) - 1) == N.neg(Fe{1});
    EXPECT_EQ(minus_one_is_power(F, k), found);
  }
}

TEST(KimSearch, WitnessesAreGenuine) {
  for (auto [p, n, k] : std::vector<Pnk>{{3, 3, 1}, {3, 4, 1}, {5, 3, 1}}) {
    const Field F = Field::build(p, n);
    const oracle::Naive N(F);
    std::mt19937 rng(p * n + k);
    for (int t = 0; t < 3; ++t) {
      const auto us = family_u_range(F);
      const Fe u = us[rng() % us.size()];
      if (F.frobenius(u, k) == u) continue;
      const auto r = find_equazionegen_witness(F, k, u);
      EXPECT_EQ(r.valid_u_count, valid_U_set(F, k).size());
      if (!r.witness) continue;
      const auto& w = *r.witness;
      const auto vals = oracle::values(N, oracle::genjk_terms(N, p, u, k, k));
      std::uint32_t direct = 0;
      for (std::uint32_t x = 0; x < F.q(); ++x) direct += N.sub(vals[N.add(Fe{x}, w.a).v], vals[x]) == w.b;
      EXPECT_EQ(w.ddt_count, direct);
      EXPECT_GE(w.ddt_count, 3u);
    }
  }
}

TEST(KimSearch, RejectsDegenerateU) {
  const Field F = Field::build(3, 3);
  EXPECT_THROW(find_equazionegen_witness(F, 1, F.one()), Error);
  try {
    find_equazionegen_witness(F, 1, F.generator(), F.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonsquareXiRequired);
  }
}

}  // namespace
}  // namespace apnforge
