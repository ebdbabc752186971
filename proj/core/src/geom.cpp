#include "apnforge/geom.hpp"

#include <cstdlib>
#include <numeric>

#include "apnforge/error.hpp"
#include "fq_poly.hpp"

namespace apnforge {

using detail::FqPoly;

namespace {

std::uint64_t isqrt(std::uint64_t x) {
  if (x < 2) return x;
  std::uint64_t r = x, y = (x + 1) / 2;
  while (y < r) {
    r = y;
    y = (r + x / r) / 2;
  }
  return r;
}

}  // namespace

std::int64_t kummer_genus(const RamificationDatum& d) {
  if (d.n == 0) throw Error(ErrorCode::kInvalidArgument, "Kummer degree must be positive");
  std::int64_t twice = 2 + 2 * static_cast<std::int64_t>(d.n) * (d.base_genus - 1);
  for (const auto& pl : d.places) {
    if (pl.r == 0 || d.n % pl.r != 0)
      throw Error(ErrorCode::kInvalidArgument, "r must divide n");
    twice += static_cast<std::int64_t>(pl.degree) * (d.n - pl.r);
  }
  if (twice % 2 != 0) throw Error(ErrorCode::kNonIntegerGenus, "odd ramification contribution");
  return twice / 2;
}

std::vector<std::int64_t> tower_genus_sequence(std::int64_t g0, std::span<const RamificationDatum> steps) {
  std::vector<std::int64_t> out{g0};
  for (const auto& s : steps) {
    if (s.base_genus != out.back())
      throw Error(ErrorCode::kInvalidArgument,
                  "step base genus " + std::to_string(s.base_genus) + " does not match " +
                      std::to_string(out.back()));
    out.push_back(kummer_genus(s));
  }
  return out;
}

HasseWeilInterval hasse_weil_interval(std::int64_t g, std::uint64_t q) {
  if (g < 0) throw Error(ErrorCode::kInvalidArgument, "negative genus");
  const auto gg = static_cast<std::uint64_t>(g);
  const auto w = static_cast<std::int64_t>(isqrt(4 * gg * gg * q));
  return {static_cast<std::int64_t>(q) + 1 - w, static_cast<std::int64_t>(q) + 1 + w};
}

bool threshold_predicate_exact(std::int64_t g, std::int64_t B, std::uint64_t q) {
  const std::int64_t m = static_cast<std::int64_t>(q) + 1 - B;
  if (m <= 0) return false;
  const auto mm = static_cast<unsigned __int128>(m) * static_cast<unsigned __int128>(m);
  const auto rhs = static_cast<unsigned __int128>(4) * static_cast<unsigned __int128>(g) *
                   static_cast<unsigned __int128>(g) * q;
  return mm > rhs;
}

bool threshold_predicate_printed(std::int64_t g, std::int64_t B, std::uint64_t q) {
  // q - 2g sqrt(q) - (B - 1) > 0  <=>  m > 0 and m^2 > 4g^2 q with m = q - (B - 1).
  const std::int64_t m = static_cast<std::int64_t>(q) - (B - 1);
  if (m <= 0) return false;
  const auto mm = static_cast<unsigned __int128>(m) * static_cast<unsigned __int128>(m);
  const auto rhs = static_cast<unsigned __int128>(2 * g) * static_cast<unsigned __int128>(2 * g) * q;
  return mm > rhs;
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  if ((q & (q - 1)) == 0) return true;
  return odd_prime_power(q).has_value();
}

ThresholdResult solvability_threshold(std::int64_t g, std::int64_t B) {
  if (g < 0 || B < 0) throw Error(ErrorCode::kInvalidArgument, "negative genus or bound");
  ThresholdResult res;
  res.g = g;
  res.B = B;
  // Both predicates hold once sqrt(q) > g + sqrt(g^2 + B).
  const auto gu = static_cast<std::uint64_t>(g);
  const std::uint64_t root = gu + isqrt(gu * gu + static_cast<std::uint64_t>(B)) + 2;
  const std::uint64_t bound = root * root;
  std::uint64_t last_fail_exact = 1, last_fail_printed = 1;
  for (std::uint64_t q = 2; q <= bound; ++q) {
    if (!is_prime_power(q)) continue;
    if (!threshold_predicate_exact(g, B, q)) last_fail_exact = q;
    if (!threshold_predicate_printed(g, B, q)) last_fail_printed = q;
  }
  auto next_pp = [](std::uint64_t q) {
    do ++q;
    while (!is_prime_power(q));
    return q;
  };
  res.q0_exact = next_pp(last_fail_exact);
  res.q0_printed = next_pp(last_fail_printed);
  res.predecessor = last_fail_exact;
  return res;
}

namespace {

struct PlaceClass {
  FqPoly g;  // monic squarefree; its roots are the geometric places
  std::vector<std::int64_t> v;
};

void refine(const Field& F, std::vector<PlaceClass>& classes, FqPoly s, std::size_t step,
            std::size_t nsteps, std::int64_t m) {
  const std::size_t count = classes.size();
  for (std::size_t i = 0; i < count && detail::fq_degree(s) > 0; ++i) {
    FqPoly h = detail::fq_gcd(F, classes[i].g, s);
    if (detail::fq_degree(h) <= 0) continue;
    FqPoly rest = detail::fq_div_exact(F, classes[i].g, h);
    s = detail::fq_div_exact(F, s, h);
    std::vector<std::int64_t> old = classes[i].v;
    classes[i].g = h;
    classes[i].v[step] += m;
    if (detail::fq_degree(rest) > 0) classes.push_back({rest, old});
  }
  if (detail::fq_degree(s) > 0) {
    PlaceClass c{detail::fq_monic(F, s), std::vector<std::int64_t>(nsteps, 0)};
    c.v[step] = m;
    classes.push_back(std::move(c));
  }
}

FqPoly trimmed(std::vector<Fe> f) {
  detail::fq_trim(f);
  return f;
}

}  // namespace

TowerDerivation derive_tower(const Field& F, std::span<const KummerStep> steps) {
  const std::size_t ns = steps.size();
  std::vector<PlaceClass> classes;
  std::vector<std::int64_t> inf_v(ns, 0);
  for (std::size_t i = 0; i < ns; ++i) {
    const FqPoly num = trimmed(steps[i].f.num), den = trimmed(steps[i].f.den);
    if (num.empty() || den.empty()) throw Error(ErrorCode::kInvalidArgument, "zero rational function");
    inf_v[i] = detail::fq_degree(den) - detail::fq_degree(num);
    for (auto& [s, m] : detail::fq_squarefree(F, num))
      refine(F, classes, s, i, ns, static_cast<std::int64_t>(m));
    for (auto& [s, m] : detail::fq_squarefree(F, den))
      refine(F, classes, s, i, ns, -static_cast<std::int64_t>(m));
  }
  struct Track {
    std::uint64_t weight;  // geometric points in the class
    std::vector<std::int64_t> v;
    std::uint64_t E = 1, N = 1;
  };
  std::vector<Track> tracks;
  tracks.push_back({1, inf_v});
  for (auto& c : classes) tracks.push_back({static_cast<std::uint64_t>(detail::fq_degree(c.g)), c.v});

  TowerDerivation out;
  out.genera.push_back(0);
  for (std::size_t i = 0; i < ns; ++i) {
    RamificationDatum d;
    d.n = steps[i].n;
    d.base_genus = out.genera.back();
    d.label = steps[i].label;
    for (auto& t : tracks) {
      const auto val = static_cast<std::uint64_t>(std::llabs(t.v[i])) * t.E;
      const auto r = static_cast<std::uint32_t>(std::gcd<std::uint64_t, std::uint64_t>(d.n, val));
      if (r < d.n) d.places.push_back({t.N * t.weight, r});
      t.E *= d.n / r;
      t.N *= r;
    }
    out.genera.push_back(kummer_genus(d));
    out.steps.push_back(std::move(d));
  }
  return out;
}

std::vector<KummerStep> system2_tower_steps(const Field& F, Fe u, Fe a, Fe xi) {
  const Fe z = F.zero();
  const Fe au1 = F.mul(a, F.add(u, F.one()));
  if (au1 == z || !F.is_square(au1)) throw Error(ErrorCode::kInvalidArgument, "a(u+1) must be a nonzero square");
  if (F.is_square(xi) || xi == z) throw Error(ErrorCode::kNonsquareXiRequired, "xi must be a nonsquare");
  std::vector<KummerStep> s;
  s.push_back({2, {{F.neg(a), z, xi, z, F.neg(F.div(F.mul(xi, xi), au1))}, {F.one()}},
               "X^2 = -xi^2/(a(u+1)) W^4 + xi W^2 - a"});
  s.push_back({2, {{F.div(au1, xi), z, F.neg(F.one())}, {F.one()}}, "T^2 = a(u+1)/xi - W^2"});
  s.push_back({2, {{F.neg(a), z, xi}, {F.one()}}, "U^2 = xi W^2 - a"});
  s.push_back({2, {{F.mul(a, u), z, F.neg(xi)}, {F.one()}}, "V^2 = -xi W^2 + a u"});
  s.push_back({1, {{F.one()}, {F.one()}}, "Y = xi/sqrt(a(u+1)) T W"});
  return s;
}

std::vector<KummerStep> kim_tower_steps(const Field& F, std::uint32_t k, Fe a, Fe xi) {
  if (k == 0 || k >= F.n()) throw Error(ErrorCode::kInvalidArgument, "need 0 < k < n");
  if (a == F.zero() || a == F.one()) throw Error(ErrorCode::kInvalidArgument, "a must avoid {0, 1}");
  if (F.is_square(xi) || xi == F.zero()) throw Error(ErrorCode::kNonsquareXiRequired, "xi must be a nonsquare");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= F.p();
  FqPoly base(q + 1, F.zero());
  base[1] = F.one();
  base[q] = F.neg(F.one());
  const FqPoly D = detail::fq_add(F, detail::fq_pow(F, base, q - 1), {F.one()});
  const FqPoly aD = detail::fq_scale(F, D, a);
  const FqPoly up = detail::fq_pow(F, {F.one(), F.one()}, q * q - q);
  const FqPoly um = detail::fq_pow(F, {F.neg(F.one()), F.one()}, q * q - q);
  std::vector<KummerStep> s;
  s.push_back({2, {{F.neg(F.inv(xi))}, D}, "X^2 = -1/(xi D(U))"});
  s.push_back({2, {detail::fq_sub(F, aD, {F.one()}), D}, "Y^2 = -1/D(U) + a"});
  s.push_back({2, {detail::fq_sub(F, aD, up), D}, "V^2 = -(U+1)^{q^2-q}/D(U) + a"});
  s.push_back({2, {detail::fq_sub(F, aD, um), D}, "T^2 = -(U-1)^{q^2-q}/D(U) + a"});
  return s;
}

}  // namespace apnforge
