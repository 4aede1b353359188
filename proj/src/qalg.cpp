#include "fermi/qalg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fermi {

IntPolynomial IntPolynomial::constant(const Int& c) { return monomial(0, c); }

IntPolynomial IntPolynomial::monomial(long exp, const Int& c) {
  IntPolynomial p;
  p.add_term(exp, c);
  return p;
}

long IntPolynomial::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

long IntPolynomial::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("max_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

Int IntPolynomial::coeff(long exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Int(0) : it->second;
}

Int IntPolynomial::at_one() const {
  Int s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

Int IntPolynomial::sum_abs() const {
  Int s = 0;
  for (const auto& [e, c] : terms_) s += abs(c);
  return s;
}

void IntPolynomial::add_term(long exp, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPolynomial IntPolynomial::shifted(long k) const {
  IntPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + k, c);
  return r;
}

IntPolynomial IntPolynomial::inverted_q() const {
  IntPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

IntPolynomial IntPolynomial::scaled_exponents(long d) const {
  if (d <= 0) throw std::invalid_argument("exponent scale must be positive");
  IntPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e * d, c);
  return r;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& b) {
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& b) {
  *this = *this * b;
  return *this;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r = a;
  r += b;
  return r;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) { return a + b; }
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) { return a * b; }

IntPolynomial q_binomial(long m, long k) {
  if (k < 0 || m < 0 || k > m) return {};
  if (k == 0 || k == m) return IntPolynomial::constant(1);
  static std::mutex mu;
  static std::map<std::pair<long, long>, IntPolynomial> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({m, k});
    if (it != memo.end()) return it->second;
  }
  // [m,k] = [m-1,k-1] + q^k [m-1,k]
  IntPolynomial r = q_binomial(m - 1, k - 1) + q_binomial(m - 1, k).shifted(k);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(m, k), r);
  return r;
}

// ---------------------------------------------------------------------------

long lcm_denom(long d, const Rat& r) {
  mpz_class den = r.get_den();
  if (!den.fits_slong_p()) throw std::overflow_error("denominator too large");
  return std::lcm(d, den.get_si());
}

namespace {

long to_grid(const Rat& r, long d) {
  Rat x = r * d;
  if (x.get_den() != 1) throw std::logic_error("exponent off the q^{1/d} grid");
  if (!x.get_num().fits_slong_p()) throw std::overflow_error("exponent too large");
  return x.get_num().get_si();
}

}  // namespace

TruncatedSeries::TruncatedSeries() : offset_(0), denom_(1), coeffs_{Int(0)} {}

TruncatedSeries::TruncatedSeries(Rat offset, long denom, std::vector<Int> coeffs)
    : offset_(std::move(offset)), denom_(denom), coeffs_(std::move(coeffs)) {
  offset_.canonicalize();
  if (denom_ <= 0) throw std::invalid_argument("series denominator must be positive");
  if (coeffs_.empty()) throw std::invalid_argument("series needs order >= 0");
}

TruncatedSeries TruncatedSeries::zero(long order, long denom, Rat offset) {
  return TruncatedSeries(std::move(offset), denom, std::vector<Int>(order + 1, Int(0)));
}

TruncatedSeries TruncatedSeries::one(long order, long denom) {
  auto s = zero(order, denom);
  s.coeffs_[0] = 1;
  return s;
}

Rat TruncatedSeries::top() const {
  Rat t = offset_ + Rat(order(), denom_);
  t.canonicalize();
  return t;
}

Int TruncatedSeries::coeff_at(const Rat& exponent) const {
  if (exponent > top()) throw std::out_of_range("coefficient beyond guaranteed order");
  if (exponent < offset_) return 0;
  Rat idx = (exponent - offset_) * denom_;
  idx.canonicalize();
  if (idx.get_den() != 1) return 0;
  return coeffs_[idx.get_num().get_si()];
}

TruncatedSeries TruncatedSeries::rescaled(long new_denom) const {
  if (new_denom % denom_ != 0) throw std::invalid_argument("rescale must refine the grid");
  long f = new_denom / denom_;
  if (f == 1) return *this;
  std::vector<Int> c(order() * f + 1, Int(0));
  for (long i = 0; i <= order(); ++i) c[i * f] = coeffs_[i];
  return TruncatedSeries(offset_, new_denom, std::move(c));
}

TruncatedSeries TruncatedSeries::truncated_to(const Rat& t) const {
  if (t >= top()) return *this;
  if (t < offset_) throw std::invalid_argument("truncation below the series offset");
  Rat idx = (t - offset_) * denom_;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), idx.get_num_mpz_t(), idx.get_den_mpz_t());
  std::vector<Int> c(coeffs_.begin(), coeffs_.begin() + fl.get_si() + 1);
  return TruncatedSeries(offset_, denom_, std::move(c));
}

TruncatedSeries TruncatedSeries::shifted(const Rat& e) const {
  TruncatedSeries r = *this;
  r.offset_ += e;
  r.offset_.canonicalize();
  return r;
}

TruncatedSeries TruncatedSeries::coarsened() const {
  long best = denom_;
  for (long c = 1; c < denom_; ++c) {
    if (denom_ % c != 0) continue;
    long f = denom_ / c;
    if (order() % f != 0) continue;
    bool ok = true;
    for (long i = 0; i <= order() && ok; ++i)
      if (i % f != 0 && coeffs_[i] != 0) ok = false;
    if (ok) {
      best = c;
      break;
    }
  }
  if (best == denom_) return *this;
  long f = denom_ / best;
  std::vector<Int> c;
  for (long i = 0; i <= order(); i += f) c.push_back(coeffs_[i]);
  return TruncatedSeries(offset_, best, std::move(c));
}

TruncatedSeries TruncatedSeries::scaled(const Int& c) const {
  TruncatedSeries r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

TruncatedSeries TruncatedSeries::leading_normalized() const {
  long k = 0;
  while (k < order() && coeffs_[k] == 0) ++k;
  if (coeffs_[k] == 0) return *this;
  std::vector<Int> c(coeffs_.begin() + k, coeffs_.end());
  return TruncatedSeries(offset_ + Rat(k, denom_), denom_, std::move(c));
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.offset_ == b.offset_ && a.denom_ == b.denom_ && a.coeffs_ == b.coeffs_;
}

TruncatedSeries series_from_poly(const IntPolynomial& p, long order) {
  if (order < 0) throw std::invalid_argument("negative order");
  if (p.is_zero()) return TruncatedSeries::zero(order);
  long lo = p.min_exponent();
  std::vector<Int> c(order + 1, Int(0));
  for (const auto& [e, v] : p.terms())
    if (e - lo <= order) c[e - lo] = v;
  return TruncatedSeries(Rat(lo), 1, std::move(c));
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  long d = std::lcm(a.denom(), b.denom());
  d = lcm_denom(d, Rat(a.offset() - b.offset()));
  Rat off = std::min(a.offset(), b.offset());
  Rat top = std::min(a.top(), b.top());
  long len = to_grid(top - off, d) + 1;
  std::vector<Int> c(len, Int(0));
  for (const TruncatedSeries* s : {&a, &b}) {
    TruncatedSeries r = s->rescaled(d);
    long shift = to_grid(r.offset() - off, d);
    for (long i = 0; i <= r.order() && shift + i < len; ++i) c[shift + i] += r.coeffs()[i];
  }
  return TruncatedSeries(off, d, std::move(c));
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_add(a, b.scaled(-1));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  long d = std::lcm(a.denom(), b.denom());
  TruncatedSeries x = a.rescaled(d), y = b.rescaled(d);
  long n = std::min(x.order(), y.order());
  std::vector<Int> c(n + 1, Int(0));
  const auto& xc = x.coeffs();
  const auto& yc = y.coeffs();
  for (long i = 0; i <= n; ++i) {
    if (xc[i] == 0) continue;
    for (long j = 0; i + j <= n; ++j)
      if (yc[j] != 0) c[i + j] += xc[i] * yc[j];
  }
  return TruncatedSeries(x.offset() + y.offset(), d, std::move(c));
}

TruncatedSeries series_invert(const TruncatedSeries& s) {
  TruncatedSeries t = s.leading_normalized();
  const auto& a = t.coeffs();
  if (a[0] != 1 && a[0] != -1) throw std::domain_error("non-invertible series");
  long n = t.order();
  std::vector<Int> b(n + 1, Int(0));
  b[0] = a[0];
  for (long k = 1; k <= n; ++k) {
    Int acc = 0;
    for (long i = 1; i <= k; ++i)
      if (a[i] != 0) acc += a[i] * b[k - i];
    b[k] = -a[0] * acc;
  }
  return TruncatedSeries(-t.offset(), t.denom(), std::move(b));
}

TruncatedSeries series_mul_poly(const TruncatedSeries& s, const IntPolynomial& p, long p_denom) {
  if (p.is_zero()) return TruncatedSeries::zero(s.order(), s.denom(), s.offset());
  long d = std::lcm(s.denom(), p_denom);
  TruncatedSeries x = s.rescaled(d);
  long f = d / p_denom;
  long lo = p.min_exponent() * f;
  long n = x.order();
  std::vector<Int> c(n + 1, Int(0));
  const auto& xc = x.coeffs();
  for (const auto& [e, v] : p.terms()) {
    long sh = e * f - lo;
    for (long i = 0; i + sh <= n; ++i)
      if (xc[i] != 0) c[i + sh] += v * xc[i];
  }
  return TruncatedSeries(x.offset() + Rat(lo, d), d, std::move(c));
}

// ---------------------------------------------------------------------------

IntPolynomial pochhammer_poly(const PochhammerSpec& spec, long denom) {
  if (!spec.length) throw std::invalid_argument("pochhammer_poly needs a finite length");
  if (*spec.length < 0) throw std::invalid_argument("negative Pochhammer length");
  IntPolynomial r = IntPolynomial::constant(1);
  for (long j = 0; j < *spec.length; ++j) {
    long e = to_grid(spec.exponent + spec.step * j, denom);
    r *= IntPolynomial::constant(1) - IntPolynomial::monomial(e, spec.sign);
  }
  return r;
}

TruncatedSeries pochhammer(const PochhammerSpec& spec, long order, long denom) {
  if (spec.sign != 1 && spec.sign != -1) throw std::invalid_argument("Pochhammer sign must be +-1");
  if (spec.step <= 0) throw std::invalid_argument("Pochhammer step must be positive");
  if (!spec.length && spec.exponent <= 0)
    throw std::domain_error("divergent Pochhammer symbol: infinite length needs exponent > 0");
  if (spec.length && *spec.length < 0) throw std::invalid_argument("negative Pochhammer length");
  long need = lcm_denom(lcm_denom(1, spec.exponent), spec.step);
  long d = denom == 0 ? need : denom;
  if (d % need != 0) throw std::invalid_argument("grid does not clear the Pochhammer exponents");
  if (spec.exponent < 0 && spec.length) {
    IntPolynomial p = pochhammer_poly(spec, d);
    TruncatedSeries one = TruncatedSeries::one(order * d, d);
    return series_mul_poly(one, p, d);
  }
  long n = order * d;
  std::vector<Int> c(n + 1, Int(0));
  c[0] = 1;
  for (long j = 0; !spec.length || j < *spec.length; ++j) {
    long e = to_grid(spec.exponent + spec.step * j, d);
    if (e > n) break;
    // multiply by (1 - sign q^e), descending so each source is read before overwritten
    if (e == 0) {
      for (auto& x : c) x *= (1 - spec.sign);
      continue;
    }
    for (long i = n; i >= e; --i) {
      if (spec.sign == 1)
        c[i] -= c[i - e];
      else
        c[i] += c[i - e];
    }
  }
  return TruncatedSeries(0, d, std::move(c));
}

}  // namespace fermi
