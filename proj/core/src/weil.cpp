#include "apnforge/weil.hpp"

#include <numeric>

#include "apnforge/error.hpp"

namespace apnforge {

CycInt::CycInt(std::uint32_t p) : p_(p), c_(p, 0) {}

CycInt::CycInt(std::uint32_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (c_.size() != p_) throw Error(ErrorCode::kInvalidArgument, "CycInt needs p coefficients");
  canonicalize();
}

CycInt CycInt::rational(std::uint32_t p, std::int64_t value) {
  CycInt r(p);
  r.c_[0] = value;
  return r;
}

CycInt CycInt::root(std::uint32_t p, std::uint32_t i) {
  CycInt r(p);
  r.c_[i % p] = 1;
  r.canonicalize();
  return r;
}

void CycInt::canonicalize() {
  const std::int64_t last = c_[p_ - 1];
  if (last != 0) {
    for (auto& x : c_) x -= last;
  }
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  for (std::uint32_t i = 0; i < p_; ++i) c_[i] += o.c_[i];
  canonicalize();
  return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
  CycInt r = *this;
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] -= o.c_[i];
  r.canonicalize();
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  CycInt r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) {
    if (c_[i] == 0) continue;
    for (std::uint32_t j = 0; j < p_; ++j) {
      const std::uint32_t idx = i + j >= p_ ? i + j - p_ : i + j;
      r.c_[idx] += c_[i] * o.c_[j];
    }
  }
  r.canonicalize();
  return r;
}

CycInt CycInt::conj() const {
  CycInt r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[(p_ - i) % p_] = c_[i];
  r.canonicalize();
  return r;
}

CycInt CycInt::rotate(std::uint32_t t) const {
  CycInt r(p_);
  t %= p_;
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[(i + t) % p_] = c_[i];
  r.canonicalize();
  return r;
}

bool CycInt::is_rational() const {
  for (std::uint32_t i = 1; i + 1 < p_; ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

std::int64_t CycInt::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::kInexactDivision, "character sum is not a rational integer");
  return c_[0];
}

std::string CycInt::to_string() const {
  if (is_rational()) return std::to_string(c_[0]);
  std::string s;
  for (std::uint32_t i = 0; i < p_; ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(c_[i]) + (i == 0 ? "" : "w^" + std::to_string(i));
  }
  return s;
}

CycInt additive_character(const Field& field, Fe x) { return CycInt::root(field.p(), field.trace(x)); }

namespace {

void check_params(const Field& f, const WeilParams& w) {
  if (w.j > w.k || w.k >= f.n()) throw Error(ErrorCode::kInvalidArgument, "need 0 <= j <= k < n");
  if ((w.eps != 1 && w.eps != -1) || (w.mu != 1 && w.mu != -1)) {
    throw Error(ErrorCode::kInvalidArgument, "eps and mu must be +-1");
  }
  if (w.a == f.zero()) throw Error(ErrorCode::kZeroShift, "shift a must be nonzero");
}

std::uint64_t ppow(const Field& f, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= f.p();
  return r;
}

struct Powers {
  std::vector<Fe> pk1;  // x^{p^k+1}
  std::vector<Fe> pj1;  // x^{p^j+1}
};

Powers powers(const Field& f, const WeilParams& w) {
  Powers out;
  out.pk1.resize(f.q());
  out.pj1.resize(f.q());
  const std::uint64_t ek = ppow(f, w.k) + 1, ej = ppow(f, w.j) + 1;
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    out.pk1[x] = f.pow(Fe{x}, ek);
    out.pj1[x] = f.pow(Fe{x}, ej);
  }
  return out;
}

// Trace histogram of A1 x^{p^k+1} + A2 x^{p^j+1} + B x over x.
CycInt s_alpha_from(const Field& f, const Powers& pw, const AlphaCoefficients& c) {
  std::vector<std::int64_t> counts(f.p(), 0);
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Fe v = f.add(f.add(f.mul(c.A1, pw.pk1[x]), f.mul(c.A2, pw.pj1[x])), f.mul(c.B, Fe{x}));
    ++counts[f.trace(v)];
  }
  return CycInt(f.p(), std::move(counts));
}

Fe constant_term(const Field& f, const WeilParams& w) {
  const Fe ue = f.add(w.u, f.from_int(w.eps));
  return f.mul(ue, f.pow(w.a, ppow(f, w.k) + 1));
}

std::uint64_t divide_exact(const Field& f, const CycInt& total) {
  const std::int64_t v = total.rational_value();
  if (v < 0 || v % static_cast<std::int64_t>(f.q()) != 0) {
    throw Error(ErrorCode::kInexactDivision, "sum " + std::to_string(v) + " not divisible by q");
  }
  return static_cast<std::uint64_t>(v / f.q());
}

}  // namespace

AlphaCoefficients alpha_coefficients(const Field& f, const WeilParams& w, Fe alpha) {
  const Fe ue = f.add(w.u, f.from_int(w.eps));
  const Fe uem = f.add(w.u, f.from_int(w.eps * w.mu));
  AlphaCoefficients c;
  c.A1 = f.mul(alpha, ue);
  c.A2 = f.neg(f.mul(alpha, uem));
  c.B = f.add(f.frobenius(f.mul(f.mul(alpha, w.a), ue), f.n() - w.k),
              f.mul(f.mul(alpha, f.frobenius(w.a, w.k)), ue));
  return c;
}

CycInt s_alpha(const Field& f, const WeilParams& w, Fe alpha) {
  check_params(f, w);
  return s_alpha_from(f, powers(f, w), alpha_coefficients(f, w, alpha));
}

std::vector<Fe> e_kernel(const Field& f, const WeilParams& w, Fe alpha) {
  check_params(f, w);
  const auto c = alpha_coefficients(f, w, alpha);
  std::vector<Fe> out;
  for (std::uint32_t zi = 0; zi < f.q(); ++zi) {
    const Fe z{zi};
    const Fe e1 = f.add(f.mul(c.A1, f.frobenius(z, w.k)), f.frobenius(f.mul(c.A1, z), f.n() - w.k));
    const Fe e2 = f.add(f.mul(c.A2, f.frobenius(z, w.j)), f.frobenius(f.mul(c.A2, z), f.n() - w.j));
    if (f.add(e1, e2) == f.zero()) out.push_back(z);
  }
  return out;
}

std::vector<Fe> e_kernel_printed(const Field& f, const WeilParams& w, Fe alpha) {
  check_params(f, w);
  const auto c = alpha_coefficients(f, w, alpha);
  std::vector<Fe> out;
  for (std::uint32_t zi = 0; zi < f.q(); ++zi) {
    const Fe z{zi};
    const Fe e1 = f.add(f.frobenius(z, w.k), f.frobenius(z, f.n() - w.k));
    const Fe e2 = f.add(f.frobenius(z, w.j), f.frobenius(z, f.n() - w.j));
    if (f.add(f.mul(c.A1, e1), f.mul(c.A2, e2)) == f.zero()) out.push_back(z);
  }
  return out;
}

namespace {

CycInt kernel_sum(const Field& f, const WeilParams& w, Fe alpha, const std::vector<Fe>& kernel) {
  const Powers pw = powers(f, w);
  const auto c = alpha_coefficients(f, w, alpha);
  std::vector<std::int64_t> counts(f.p(), 0);
  for (Fe z : kernel) {
    const Fe v = f.add(f.add(f.mul(c.A1, pw.pk1[z.v]), f.mul(c.A2, pw.pj1[z.v])), f.mul(c.B, z));
    counts[f.trace(v)] += f.q();
  }
  return CycInt(f.p(), std::move(counts));
}

}  // namespace

std::pair<CycInt, CycInt> s_alpha_sq_identity(const Field& f, const WeilParams& w, Fe alpha) {
  check_params(f, w);
  const CycInt s = s_alpha_from(f, powers(f, w), alpha_coefficients(f, w, alpha));
  return {s * s.conj(), kernel_sum(f, w, alpha, e_kernel(f, w, alpha))};
}

CycInt s_alpha_sq_printed_rhs(const Field& f, const WeilParams& w, Fe alpha) {
  return kernel_sum(f, w, alpha, e_kernel_printed(f, w, alpha));
}

std::vector<std::uint64_t> ddt_row_weil(const Field& f, const WeilParams& w) {
  check_params(f, w);
  const Powers pw = powers(f, w);
  std::vector<CycInt> s;
  s.reserve(f.q());
  for (std::uint32_t al = 0; al < f.q(); ++al) s.push_back(s_alpha_from(f, pw, alpha_coefficients(f, w, Fe{al})));
  const Fe c0 = constant_term(f, w);
  std::vector<std::uint64_t> out(f.q());
  for (std::uint32_t bi = 0; bi < f.q(); ++bi) {
    const Fe cb = f.sub(c0, Fe{bi});
    CycInt total(f.p());
    for (std::uint32_t al = 0; al < f.q(); ++al) total += s[al].rotate(f.trace(f.mul(Fe{al}, cb)));
    out[bi] = divide_exact(f, total);
  }
  return out;
}

std::uint64_t ddt_entry_weil(const Field& f, const WeilParams& w, Fe b) {
  check_params(f, w);
  const Powers pw = powers(f, w);
  const Fe cb = f.sub(constant_term(f, w), b);
  CycInt total(f.p());
  for (std::uint32_t al = 0; al < f.q(); ++al) {
    const CycInt s = s_alpha_from(f, pw, alpha_coefficients(f, w, Fe{al}));
    total += additive_character(f, f.mul(Fe{al}, cb)) * s;
  }
  return divide_exact(f, total);
}

std::vector<std::uint64_t> case_equation_row(const Field& f, const WeilParams& w) {
  check_params(f, w);
  const Powers pw = powers(f, w);
  const Fe ue = f.add(w.u, f.from_int(w.eps));
  const Fe uem = f.add(w.u, f.from_int(w.eps * w.mu));
  const Fe apk = f.frobenius(w.a, w.k);
  const Fe c0 = constant_term(f, w);
  std::vector<std::uint64_t> out(f.q(), 0);
  for (std::uint32_t xi = 0; xi < f.q(); ++xi) {
    const Fe x{xi};
    Fe v = f.sub(f.mul(ue, pw.pk1[xi]), f.mul(uem, pw.pj1[xi]));
    v = f.add(v, f.mul(ue, f.add(f.mul(w.a, f.frobenius(x, w.k)), f.mul(apk, x))));
    v = f.add(v, c0);
    ++out[v.v];  // v - b = 0 exactly when b = v
  }
  return out;
}

std::uint64_t case_equation_count(const Field& f, const WeilParams& w, Fe b) {
  return case_equation_row(f, w)[b.v];
}

bool linearized_is_permutation(const Field& f, std::uint32_t r, Fe gamma) {
  if (r >= f.n()) throw Error(ErrorCode::kInvalidArgument, "need 0 <= r < n");
  if (gamma == f.zero()) throw Error(ErrorCode::kInvalidArgument, "gamma must be nonzero");
  const std::uint32_t d = std::gcd(f.n(), r);
  Fe lhs = f.norm_rel(gamma, d);
  if ((f.n() / d) % 2 == 1) lhs = f.neg(lhs);
  return lhs != f.one();
}

CorollaryReport corollary_nonapn_check(const Field& f, std::uint32_t k, Fe u) {
  if (k >= f.n()) throw Error(ErrorCode::kInvalidArgument, "need k < n");
  const std::uint32_t g = std::gcd(f.n(), 2 * k);
  if ((f.n() / g) % 2 == 0) {
    throw Error(ErrorCode::kHypothesisUnmet, "n / gcd(n, 2k) = " + std::to_string(f.n() / g) + " is even");
  }
  CorollaryReport rep;
  rep.k = k;
  rep.u = u;
  const SparsePoly F = make_family(f, FamilyParams{Family::kGenJK, u, k, k});
  const auto sp = spectrum(f, F);
  rep.du = sp.du;
  rep.not_apn = sp.du >= 3;
  rep.witness = ApnWitness{sp.witness.a, sp.witness.b, sp.du};
  for (int eps : {1, -1}) {
    if (f.add(u, f.from_int(eps)) == f.zero()) continue;
    WeilParams w{k, k, u, eps, -1, f.one()};
    CorollaryEntry e;
    e.eps = eps;
    e.b = constant_term(f, w);
    e.count = ddt_entry_weil(f, w, e.b);
    e.equals_q = e.count == f.q();
    rep.literal.push_back(e);
  }
  return rep;
}

}  // namespace apnforge
