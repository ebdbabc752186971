#include "fp_poly.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "apnforge/field.hpp"

namespace apnforge::detail {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - quot * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - quot * new_r};
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
  trim(a);
  const int dm = degree(m);
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (degree(a) >= dm) {
    const int shift = degree(a) - dm;
    const std::uint32_t c = mulmod(a.back(), lead_inv, p);
    for (int j = 0; j <= dm; ++j) {
      std::uint32_t& slot = a[shift + j];
      slot = static_cast<std::uint32_t>((slot + p - mulmod(c, m[j], p)) % p);
    }
    trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + mulmod(a[i], b[j], p)) % p);
    }
  }
  return fp_mod(std::move(prod), m, p);
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint32_t p) {
  FpPoly result = fp_mod(FpPoly{1}, m, p);
  base = fp_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = fp_mulmod(result, base, m, p);
    e >>= 1;
    if (e > 0) base = fp_mulmod(base, base, m, p);
  }
  return result;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  trim(out);
  return out;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
  }
  return a;
}

bool fp_irreducible(const FpPoly& f, std::uint32_t p) {
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const FpPoly x{0, 1};
  // x^{p^k} mod f for k = 0..n
  std::vector<FpPoly> frob(n + 1);
  frob[0] = fp_mod(x, f, p);
  for (int k = 1; k <= n; ++k) frob[k] = fp_powmod(frob[k - 1], p, f, p);
  if (fp_sub(frob[n], frob[0], p) != FpPoly{}) return false;
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(n))) {
    FpPoly g = fp_gcd(f, fp_sub(frob[n / r], frob[0], p), p);
    if (degree(g) > 0) return false;
  }
  return true;
}

}  // namespace apnforge::detail
