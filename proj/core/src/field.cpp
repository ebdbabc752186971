#include "apnforge/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "apnforge/error.hpp"
#include "fp_poly.hpp"

namespace apnforge {

using detail::FpPoly;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> odd_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  std::uint32_t n = 0;
  for (std::uint64_t t = q; t > 1; t /= f[0]) ++n;
  return std::pair{static_cast<std::uint32_t>(f[0]), n};
}

bool two_is_square(std::uint32_t p, std::uint32_t n) {
  return p % 8 == 1 || p % 8 == 7 || n % 2 == 0;
}

struct Field::Impl {
  std::uint32_t p = 0, n = 0, q = 0;
  std::vector<std::uint32_t> modulus;  // monic, size n+1
  Fe gen;
  bool tables = false;
  std::vector<std::uint64_t> order_factors;  // primes dividing q-1
  std::vector<std::uint32_t> basis_trace;    // Tr(x^i)
  std::vector<std::uint32_t> pw;             // p^i

  // table mode
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // log[0] unused
  std::vector<std::int32_t> zech;  // log(1 + g^k), -1 when 1 + g^k = 0
  std::vector<std::uint8_t> trace_small;
  std::vector<std::uint32_t> trace_big;

  void to_digits(std::uint32_t x, std::uint32_t* d) const {
    for (std::uint32_t i = 0; i < n; ++i) {
      d[i] = x % p;
      x /= p;
    }
  }
  std::uint32_t from_digits(const std::uint32_t* d) const {
    std::uint32_t x = 0;
    for (std::uint32_t i = n; i-- > 0;) x = x * p + d[i];
    return x;
  }
  FpPoly to_poly(std::uint32_t x) const {
    FpPoly out(n);
    to_digits(x, out.data());
    detail::trim(out);
    return out;
  }
  std::uint32_t from_poly(const FpPoly& a) const {
    std::uint32_t x = 0;
    for (std::size_t i = a.size(); i-- > 0;) x = x * p + a[i];
    return x;
  }

  std::uint32_t add_digits(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t s = (x % p + y % p) % p;
      r += s * pw[i];
      x /= p;
      y /= p;
    }
    return r;
  }
  std::uint32_t neg_digits(std::uint32_t x) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      r += ((p - x % p) % p) * pw[i];
      x /= p;
    }
    return r;
  }
  std::uint32_t mul_poly(std::uint32_t x, std::uint32_t y) const {
    if (n == 1) return detail::mulmod(x, y, p);
    FpPoly m(modulus.begin(), modulus.end());
    return from_poly(detail::fp_mulmod(to_poly(x), to_poly(y), m, p));
  }
  std::uint32_t pow_poly(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t result = 1;
    std::uint32_t base = x;
    while (e > 0) {
      if (e & 1) result = mul_poly(result, base);
      e >>= 1;
      if (e > 0) base = mul_poly(base, base);
    }
    return result;
  }
  bool has_full_order(std::uint32_t x) const {
    if (x == 0) return false;
    for (std::uint64_t r : order_factors) {
      if (pow_poly(x, (q - 1) / r) == 1) return false;
    }
    return true;
  }
};

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

void build_tables(Field::Impl& f) {
  const std::uint32_t qm1 = f.q - 1;
  f.exp.assign(2 * static_cast<std::size_t>(qm1), 0);
  f.log.assign(f.q, 0);
  std::uint32_t cur = 1;
  const bool gen_is_x = f.n > 1 && f.gen.v == f.p;
  for (std::uint32_t i = 0; i < qm1; ++i) {
    f.exp[i] = cur;
    f.exp[i + qm1] = cur;
    f.log[cur] = i;
    if (gen_is_x) {
      // multiply by x: shift digits up and reduce the top one
      std::uint32_t top = cur / f.pw[f.n - 1];
      std::uint32_t shifted = (cur % f.pw[f.n - 1]) * f.p;
      if (top != 0) {
        std::uint32_t r = 0;
        for (std::uint32_t j = 0; j < f.n; ++j) {
          const std::uint32_t dj = (shifted / f.pw[j]) % f.p;
          const std::uint32_t sub = detail::mulmod(top, f.modulus[j], f.p);
          r += ((dj + f.p - sub) % f.p) * f.pw[j];
        }
        shifted = r;
      }
      cur = shifted;
    } else {
      cur = f.mul_poly(cur, f.gen.v);
    }
  }
  f.zech.assign(qm1, -1);
  for (std::uint32_t k = 0; k < qm1; ++k) {
    const std::uint32_t e = f.exp[k];
    const std::uint32_t d0 = e % f.p;
    const std::uint32_t e1 = e - d0 + (d0 + 1) % f.p;
    f.zech[k] = e1 == 0 ? -1 : static_cast<std::int32_t>(f.log[e1]);
  }
}

}  // namespace

Field Field::build(std::uint32_t p, std::uint32_t n,
                   std::optional<std::vector<std::uint32_t>> modulus, FieldOptions options) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not an odd prime");
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q64 *= p;
    if (q64 > kFieldGuard) {
      throw Error(ErrorCode::kFieldTooLarge,
                  std::to_string(p) + "^" + std::to_string(n) + " exceeds 2^31");
    }
  }
  auto impl = std::make_shared<Impl>();
  Impl& f = *impl;
  f.p = p;
  f.n = n;
  f.q = static_cast<std::uint32_t>(q64);
  f.order_factors = prime_factors(f.q - 1);
  f.pw.resize(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) f.pw[i] = static_cast<std::uint32_t>(ipow(p, i));

  if (modulus) {
    auto m = *modulus;
    if (m.size() != n + 1 || m.back() % p != 1) {
      throw Error(ErrorCode::kInvalidArgument, "modulus must be monic of degree n");
    }
    for (auto& c : m) c %= p;
    if (!detail::fp_irreducible(FpPoly(m.begin(), m.end()), p)) {
      throw Error(ErrorCode::kReducibleModulus, "modulus is reducible over GF(p)");
    }
    f.modulus = std::move(m);
  } else if (n == 1) {
    f.modulus = {0, 1};
  } else {
    // Monic candidates in increasing order of sum c_i p^i (i < n).
    std::optional<std::vector<std::uint32_t>> first_irreducible;
    const std::uint64_t limit = f.pw[n];
    std::uint64_t examined = 0;
    for (std::uint64_t code = 0; code < limit; ++code) {
      std::vector<std::uint32_t> m(n + 1);
      std::uint64_t t = code;
      for (std::uint32_t i = 0; i < n; ++i) {
        m[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      m[n] = 1;
      if (m[0] == 0) continue;
      ++examined;
      if (!detail::fp_irreducible(FpPoly(m.begin(), m.end()), p)) continue;
      if (!first_irreducible) first_irreducible = m;
      f.modulus = m;
      if (f.has_full_order(p)) break;
      f.modulus.clear();
      if (examined >= 1000) break;
    }
    if (f.modulus.empty()) f.modulus = *first_irreducible;
  }

  if (n > 1 && f.has_full_order(p)) {
    f.gen = Fe{p};
  } else {
    for (std::uint32_t c = 2; c < f.q; ++c) {
      if (f.has_full_order(c)) {
        f.gen = Fe{c};
        break;
      }
    }
  }

  f.basis_trace.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t acc = 0;
    std::uint32_t cur = f.pw[i];
    for (std::uint32_t j = 0; j < n; ++j) {
      acc = f.add_digits(acc, cur);
      cur = f.pow_poly(cur, p);
    }
    f.basis_trace[i] = acc;  // lies in the prime field
  }

  f.tables = f.q <= options.table_cap;
  if (f.tables) {
    build_tables(f);
    if (p < 256) {
      f.trace_small.resize(f.q);
    } else {
      f.trace_big.resize(f.q);
    }
    std::vector<std::uint32_t> d(n);
    for (std::uint32_t x = 0; x < f.q; ++x) {
      f.to_digits(x, d.data());
      std::uint64_t t = 0;
      for (std::uint32_t i = 0; i < n; ++i) t += static_cast<std::uint64_t>(d[i]) * f.basis_trace[i];
      if (p < 256) {
        f.trace_small[x] = static_cast<std::uint8_t>(t % p);
      } else {
        f.trace_big[x] = static_cast<std::uint32_t>(t % p);
      }
    }
  }
  return Field(std::move(impl));
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::n() const { return impl_->n; }
std::uint32_t Field::q() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }
Fe Field::generator() const { return impl_->gen; }
bool Field::has_tables() const { return impl_->tables; }
bool Field::same_as(const Field& other) const {
  return impl_ == other.impl_ || (p() == other.p() && n() == other.n() && modulus() == other.modulus());
}

Fe Field::element(std::uint64_t index) const {
  if (index >= impl_->q) throw Error(ErrorCode::kInvalidArgument, "element index out of range");
  return Fe{static_cast<std::uint32_t>(index)};
}

Fe Field::from_int(std::int64_t value) const {
  const std::int64_t p = impl_->p;
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return Fe{static_cast<std::uint32_t>(r)};
}

Fe Field::add(Fe x, Fe y) const {
  const Impl& f = *impl_;
  if (f.n == 1) {
    const std::uint32_t s = x.v + y.v;
    return Fe{s >= f.p ? s - f.p : s};
  }
  if (x.v == 0) return y;
  if (y.v == 0) return x;
  if (!f.tables) return Fe{f.add_digits(x.v, y.v)};
  const std::uint32_t lx = f.log[x.v];
  const std::uint32_t ly = f.log[y.v];
  const std::uint32_t k = ly >= lx ? ly - lx : ly + (f.q - 1) - lx;
  const std::int32_t z = f.zech[k];
  if (z < 0) return Fe{0};
  return Fe{f.exp[lx + static_cast<std::uint32_t>(z)]};
}

Fe Field::neg(Fe x) const {
  const Impl& f = *impl_;
  if (x.v == 0) return x;
  if (f.n == 1) return Fe{f.p - x.v};
  if (f.tables) return Fe{f.exp[f.log[x.v] + (f.q - 1) / 2]};
  return Fe{f.neg_digits(x.v)};
}

Fe Field::sub(Fe x, Fe y) const { return add(x, neg(y)); }

Fe Field::mul(Fe x, Fe y) const {
  const Impl& f = *impl_;
  if (x.v == 0 || y.v == 0) return Fe{0};
  if (f.tables) return Fe{f.exp[f.log[x.v] + f.log[y.v]]};
  return Fe{f.mul_poly(x.v, y.v)};
}

Fe Field::pow(Fe x, std::uint64_t e) const {
  const Impl& f = *impl_;
  if (e == 0) return Fe{1};
  if (x.v == 0) return Fe{0};
  const std::uint64_t qm1 = f.q - 1;
  if (f.tables) {
    const std::uint64_t k = (static_cast<std::uint64_t>(f.log[x.v]) * (e % qm1)) % qm1;
    return Fe{f.exp[k]};
  }
  std::uint64_t r = e % qm1;
  return Fe{f.pow_poly(x.v, r)};
}

Fe Field::inv(Fe x) const {
  if (x.v == 0) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  const Impl& f = *impl_;
  if (f.tables) {
    const std::uint32_t l = f.log[x.v];
    return Fe{f.exp[l == 0 ? 0 : (f.q - 1) - l]};
  }
  return pow(x, f.q - 2);
}

Fe Field::div(Fe x, Fe y) const { return mul(x, inv(y)); }

Fe Field::gen_pow(std::uint64_t k) const {
  const Impl& f = *impl_;
  if (f.tables) return Fe{f.exp[k % (f.q - 1)]};
  return pow(f.gen, k);
}

std::optional<std::uint64_t> Field::log(Fe x) const {
  const Impl& f = *impl_;
  if (x.v == 0) return std::nullopt;
  if (f.tables) return f.log[x.v];
  // baby-step giant-step
  const std::uint64_t qm1 = f.q - 1;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(qm1))));
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  baby.reserve(m * 2);
  Fe cur = one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur.v, j);
    cur = mul(cur, f.gen);
  }
  const Fe giant = inv(pow(f.gen, m));
  Fe y = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(y.v); it != baby.end()) return (i * m + it->second) % qm1;
    y = mul(y, giant);
  }
  return std::nullopt;
}

int Field::quad_char(Fe x) const {
  const Impl& f = *impl_;
  if (x.v == 0) return 0;
  if (f.tables) return (f.log[x.v] & 1u) ? -1 : 1;
  return pow(x, (f.q - 1) / 2).v == 1 ? 1 : -1;
}

Fe Field::first_nonsquare() const {
  for (std::uint32_t i = 2; i < impl_->q; ++i) {
    if (quad_char(Fe{i}) == -1) return Fe{i};
  }
  return Fe{2};  // unreachable for odd q
}

std::optional<std::pair<Fe, Fe>> Field::sqrt(Fe x) const {
  const Impl& f = *impl_;
  if (x.v == 0) return std::pair{x, x};
  if (quad_char(x) != 1) return std::nullopt;
  Fe r;
  if (f.tables) {
    r = Fe{f.exp[f.log[x.v] / 2]};
  } else {
    // Tonelli-Shanks over F_q
    std::uint64_t s = 0, t = f.q - 1;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    Fe z = first_nonsquare();
    Fe c = pow(z, t);
    Fe res = pow(x, (t + 1) / 2);
    Fe tt = pow(x, t);
    std::uint64_t m = s;
    while (tt.v != 1) {
      std::uint64_t i = 0;
      Fe t2 = tt;
      while (t2.v != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      Fe bb = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) bb = mul(bb, bb);
      m = i;
      c = mul(bb, bb);
      tt = mul(tt, c);
      res = mul(res, bb);
    }
    r = res;
  }
  Fe o = neg(r);
  if (o < r) std::swap(r, o);
  return std::pair{r, o};
}

std::uint32_t Field::trace(Fe x) const {
  const Impl& f = *impl_;
  if (f.tables) return f.p < 256 ? f.trace_small[x.v] : f.trace_big[x.v];
  std::vector<std::uint32_t> d(f.n);
  f.to_digits(x.v, d.data());
  std::uint64_t t = 0;
  for (std::uint32_t i = 0; i < f.n; ++i) t += static_cast<std::uint64_t>(d[i]) * f.basis_trace[i];
  return static_cast<std::uint32_t>(t % f.p);
}

Fe Field::frobenius(Fe x, std::uint32_t k) const {
  const Impl& f = *impl_;
  k %= f.n;
  if (k == 0 || x.v == 0) return x;
  if (f.tables) {
    const std::uint64_t qm1 = f.q - 1;
    return Fe{f.exp[(static_cast<std::uint64_t>(f.log[x.v]) * f.pw[k]) % qm1]};
  }
  return pow(x, f.pw[k]);
}

Fe Field::norm_rel(Fe x, std::uint32_t d) const {
  const Impl& f = *impl_;
  if (d == 0 || f.n % d != 0) {
    throw Error(ErrorCode::kBadDivisor, std::to_string(d) + " does not divide " + std::to_string(f.n));
  }
  if (x.v == 0) return x;
  return pow(x, (f.q - 1) / (f.pw[d] - 1));
}

bool Field::in_subfield(Fe x, std::uint32_t d) const {
  if (d == 0) return x == zero() || x == one();
  return frobenius(x, std::gcd(d, impl_->n)) == x;
}

std::vector<std::uint32_t> Field::digits(Fe x) const {
  std::vector<std::uint32_t> d(impl_->n);
  impl_->to_digits(x.v, d.data());
  return d;
}

Fe Field::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() != impl_->n) throw Error(ErrorCode::kInvalidArgument, "digit vector length must be n");
  std::uint32_t x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * impl_->p + d[i] % impl_->p;
  return Fe{x};
}

std::string Field::descriptor() const {
  std::string s = std::to_string(p()) + "^" + std::to_string(n()) + "/";
  for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(impl_->modulus[i]);
  }
  return s;
}

std::string Field::describe(Fe x) const {
  if (x.v == 0) return "0 (#0)";
  return "g^" + std::to_string(*log(x)) + " (#" + std::to_string(x.v) + ")";
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParseError, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Field parse_field(std::string_view text, FieldOptions options) {
  text = strip(text);
  std::string_view head = text;
  std::optional<std::vector<std::uint32_t>> modulus;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    head = text.substr(0, slash);
    std::string_view rest = text.substr(slash + 1);
    std::vector<std::uint32_t> m;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      m.push_back(static_cast<std::uint32_t>(parse_uint(strip(rest.substr(0, comma)), "modulus coefficient")));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    modulus = std::move(m);
  }
  std::uint64_t p = 0, n = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = parse_uint(strip(head.substr(0, caret)), "characteristic");
    n = parse_uint(strip(head.substr(caret + 1)), "degree");
  } else {
    p = parse_uint(head, "characteristic");
  }
  if (p > kFieldGuard || n > 64) throw Error(ErrorCode::kFieldTooLarge, std::string(text));
  if (modulus) {
    for (auto& c : *modulus) c %= static_cast<std::uint32_t>(p);
  }
  return Field::build(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n), modulus, options);
}

Fe parse_element(const Field& field, std::string_view text) {
  text = strip(text);
  if (text.empty()) throw Error(ErrorCode::kParseError, "empty element");
  if (text.front() == '#') return field.element(parse_uint(text.substr(1), "index"));
  if (text.starts_with("i:")) return field.element(parse_uint(text.substr(2), "index"));
  if (text.front() == 'g' || text.front() == 'w') {
    if (text.size() == 1) return field.generator();
    if (text[1] != '^') throw Error(ErrorCode::kParseError, "bad element '" + std::string(text) + "'");
    std::string_view e = text.substr(2);
    if (!e.empty() && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
    return field.gen_pow(parse_uint(e, "exponent"));
  }
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const std::uint64_t v = parse_uint(text, "integer");
  const std::int64_t r = static_cast<std::int64_t>(v % field.p());
  return field.from_int(negative ? -r : r);
}

}  // namespace apnforge
