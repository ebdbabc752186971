#include "fq_poly.hpp"

#include <algorithm>

#include "apnforge/error.hpp"

namespace apnforge::detail {

void fq_trim(FqPoly& f) {
  while (!f.empty() && f.back() == Fe{0}) f.pop_back();
}

int fq_degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly fq_add(const Field& F, const FqPoly& f, const FqPoly& g) {
  FqPoly r(std::max(f.size(), g.size()), F.zero());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = F.add(r[i], g[i]);
  fq_trim(r);
  return r;
}

FqPoly fq_sub(const Field& F, const FqPoly& f, const FqPoly& g) {
  FqPoly r(std::max(f.size(), g.size()), F.zero());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = F.sub(r[i], g[i]);
  fq_trim(r);
  return r;
}

FqPoly fq_mul(const Field& F, const FqPoly& f, const FqPoly& g) {
  if (f.empty() || g.empty()) return {};
  FqPoly r(f.size() + g.size() - 1, F.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == F.zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
  }
  fq_trim(r);
  return r;
}

FqPoly fq_scale(const Field& F, const FqPoly& f, Fe c) {
  FqPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.mul(f[i], c);
  fq_trim(r);
  return r;
}

FqPoly fq_pow(const Field& F, FqPoly f, std::uint64_t e) {
  FqPoly r{F.one()};
  while (e) {
    if (e & 1) r = fq_mul(F, r, f);
    e >>= 1;
    if (e) f = fq_mul(F, f, f);
  }
  return r;
}

std::pair<FqPoly, FqPoly> fq_divmod(const Field& F, const FqPoly& f, const FqPoly& g) {
  if (g.empty()) throw Error(ErrorCode::kInvalidArgument, "polynomial division by zero");
  FqPoly rem = f;
  fq_trim(rem);
  if (rem.size() < g.size()) return {{}, rem};
  FqPoly quo(rem.size() - g.size() + 1, F.zero());
  const Fe lead_inv = F.inv(g.back());
  for (std::size_t i = rem.size(); i-- >= g.size();) {
    const Fe c = F.mul(rem[i], lead_inv);
    const std::size_t s = i - (g.size() - 1);
    quo[s] = c;
    if (c == F.zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) rem[s + j] = F.sub(rem[s + j], F.mul(c, g[j]));
  }
  rem.resize(g.size() - 1);
  fq_trim(rem);
  fq_trim(quo);
  return {quo, rem};
}

FqPoly fq_div_exact(const Field& F, const FqPoly& f, const FqPoly& g) {
  auto [q, r] = fq_divmod(F, f, g);
  if (!r.empty()) throw Error(ErrorCode::kInexactDivision, "polynomial does not divide");
  return q;
}

FqPoly fq_monic(const Field& F, const FqPoly& f) {
  if (f.empty()) return f;
  return fq_scale(F, f, F.inv(f.back()));
}

FqPoly fq_gcd(const Field& F, FqPoly f, FqPoly g) {
  fq_trim(f);
  fq_trim(g);
  while (!g.empty()) {
    auto r = fq_divmod(F, f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return fq_monic(F, f);
}

FqPoly fq_derivative(const Field& F, const FqPoly& f) {
  if (f.size() <= 1) return {};
  FqPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), f[i]);
  fq_trim(r);
  return r;
}

namespace {

// g(x) with g(x)^p = f(x), for f' = 0.
FqPoly pth_root(const Field& F, const FqPoly& f) {
  const std::uint32_t p = F.p();
  FqPoly r((f.size() - 1) / p + 1, F.zero());
  for (std::size_t i = 0; i < f.size(); i += p) r[i / p] = F.frobenius(f[i], F.n() - 1);
  fq_trim(r);
  return r;
}

bool is_one(const FqPoly& f) { return f.size() == 1; }

}  // namespace

std::vector<std::pair<FqPoly, std::uint64_t>> fq_squarefree(const Field& F, const FqPoly& f0) {
  FqPoly f = fq_monic(F, f0);
  if (f.empty()) throw Error(ErrorCode::kInvalidArgument, "squarefree decomposition of zero");
  std::vector<std::pair<FqPoly, std::uint64_t>> out;
  if (is_one(f)) return out;
  FqPoly c = fq_gcd(F, f, fq_derivative(F, f));
  FqPoly w = fq_div_exact(F, f, c);
  std::uint64_t i = 1;
  while (!is_one(w)) {
    FqPoly y = fq_gcd(F, w, c);
    FqPoly z = fq_div_exact(F, w, y);
    if (fq_degree(z) > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = fq_div_exact(F, c, y);
  }
  if (!is_one(c)) {
    for (auto& [g, m] : fq_squarefree(F, pth_root(F, c))) out.emplace_back(g, m * F.p());
  }
  return out;
}

}  // namespace apnforge::detail
