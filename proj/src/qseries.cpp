#include "fermi/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fermi {

long AffineForm::eval(const std::vector<long>& n) const {
  if (coeffs.size() > n.size()) throw std::invalid_argument("affine form longer than the summation vector");
  long v = constant;
  for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * n[i];
  return v;
}

namespace {

Int floor_of(const Rat& r) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}

long grid_index(const Rat& r, long d) {
  Rat x = r * d;
  x.canonicalize();
  if (x.get_den() != 1) throw std::logic_error("exponent off the q^{1/d} grid");
  return x.get_num().get_si();
}

long floor_index(const Rat& r, long d) { return floor_of(r * d).get_si(); }

Rat rmin(const Rat& a, const Rat& b) { return a < b ? a : b; }

// exact polynomial P in q^{1/pd} as a series exact through q^top
TruncatedSeries exact_series(const IntPolynomial& p, long pd, const Rat& top) {
  if (p.is_zero() || Rat(p.min_exponent(), pd) > top) return TruncatedSeries::zero(0, pd, top);
  long lo = p.min_exponent();
  long len = floor_index(top - Rat(lo, pd), pd) + 1;
  std::vector<Int> c(len, Int(0));
  for (const auto& [e, v] : p.terms())
    if (e - lo < len) c[e - lo] = v;
  return TruncatedSeries(Rat(lo, pd), pd, std::move(c));
}

// x / P where P is an exact polynomial in q^{1/pd}; the grid order of x is kept
TruncatedSeries divide_by_poly(const TruncatedSeries& x, const IntPolynomial& p, long pd) {
  if (p.is_zero()) throw std::domain_error("division by zero polynomial");
  long d = std::lcm(x.denom(), pd);
  TruncatedSeries xs = x.rescaled(d);
  IntPolynomial ps = p.scaled_exponents(d / pd);
  long lo = ps.min_exponent();
  std::vector<Int> c(xs.order() + 1, Int(0));
  for (const auto& [e, v] : ps.terms())
    if (e - lo <= xs.order()) c[e - lo] = v;
  TruncatedSeries inv = series_invert(TruncatedSeries(Rat(lo, d), d, std::move(c)));
  return series_mul(xs, inv);
}

// fixed window [lo, top] on the grid q^{1/d}
class Window {
 public:
  Window(Rat lo, Rat top, long d) : lo_(std::move(lo)), top_(std::move(top)), d_(d) {
    if (top_ < lo_) throw std::logic_error("empty window");
    c_.assign(grid_index(top_ - lo_, d_) + 1, Int(0));
  }
  long terms_left(const Rat& from) const { return floor_index(top_ - from, d_); }
  void add(const TruncatedSeries& s, int sign = 1) {
    if (s.offset() > top_) return;
    if (s.offset() < lo_) throw std::logic_error("term below the window");
    if (s.top() < top_) throw std::logic_error("term not exact through the window top");
    if (d_ % s.denom() != 0) throw std::logic_error("term off the window grid");
    TruncatedSeries r = s.rescaled(d_);
    long shift = grid_index(r.offset() - lo_, d_);
    const auto& rc = r.coeffs();
    for (long i = 0; shift + i < static_cast<long>(c_.size()); ++i) {
      if (sign > 0)
        c_[shift + i] += rc[i];
      else
        c_[shift + i] -= rc[i];
    }
  }
  TruncatedSeries result() const { return TruncatedSeries(lo_, d_, c_); }

 private:
  Rat lo_, top_;
  long d_;
  std::vector<Int> c_;
};

// drop leading zeros below `start` if there are only zeros there
TruncatedSeries rewindow(const TruncatedSeries& s, const Rat& start) {
  if (start <= s.offset() || start > s.top()) return s;
  long k = grid_index(start - s.offset(), s.denom());
  for (long i = 0; i < k; ++i)
    if (s.coeffs()[i] != 0) return s;
  return TruncatedSeries(start, s.denom(), std::vector<Int>(s.coeffs().begin() + k, s.coeffs().end()));
}

TruncatedSeries apply_prefactor(const TruncatedSeries& s, const std::vector<PrefactorTerm>& pre, long d) {
  TruncatedSeries r = s;
  long w = floor_of(s.top() - s.offset()).get_si() + 1;
  for (const auto& t : pre) {
    if (t.power == 0) continue;
    TruncatedSeries p = pochhammer(t.symbol, w, d);
    if (t.power < 0) p = series_invert(p);
    for (int k = 0; k < std::abs(t.power); ++k) r = series_mul(r, p);
  }
  return r;
}

long prefactor_grid(long d, const std::vector<PrefactorTerm>& pre) {
  for (const auto& t : pre) d = lcm_denom(lcm_denom(d, t.symbol.exponent), t.symbol.step);
  return d;
}

Rat quadratic_value(const FermionicSumSpec& s, const std::vector<long>& n) {
  Rat e = 0;
  for (int i = 0; i < s.dim; ++i) {
    e += s.linear[i] * n[i];
    for (int j = 0; j < s.dim; ++j) e += s.quadratic[i][j] * n[i] * n[j] / 2;
  }
  e.canonicalize();
  return e;
}

bool restrictions_hold(const FermionicSumSpec& s, const std::vector<long>& n) {
  for (const auto& r : s.restrictions) {
    long v = r.form.eval(n);
    if (r.kind == Restriction::Kind::kGe) {
      if (v < 0) return false;
    } else if (((v - r.residue) % r.modulus + r.modulus) % r.modulus != 0) {
      return false;
    }
  }
  return true;
}

using Point = std::pair<std::vector<long>, Rat>;

// all n >= 0 with quadratic_value <= budget, by separable bounds when the
// off-diagonal part is nonnegative, otherwise by an exact LDL decomposition
std::vector<Point> lattice_points(const FermionicSumSpec& s, const Rat& budget) {
  const int m = s.dim;
  std::vector<Point> out;
  std::vector<long> n(m, 0);
  auto leaf = [&] {
    Rat e = quadratic_value(s, n);
    if (e <= budget && restrictions_hold(s, n)) out.emplace_back(n, e);
  };

  bool separable = true;
  for (int i = 0; i < m && separable; ++i) {
    for (int j = 0; j < m; ++j)
      if (i != j && s.quadratic[i][j] < 0) separable = false;
    if (s.quadratic[i][i] < 0 || (s.quadratic[i][i] == 0 && s.linear[i] <= 0)) separable = false;
  }
  if (separable) {
    auto f = [&](int i, long t) { return Rat(s.quadratic[i][i] * t * t / 2 + s.linear[i] * t); };
    std::vector<Rat> fmin(m);
    std::vector<long> argmin(m);
    for (int i = 0; i < m; ++i) {
      long t = 0;
      while (f(i, t + 1) < f(i, t)) ++t;
      argmin[i] = t;
      fmin[i] = f(i, t);
    }
    std::vector<Rat> rest(m + 1, Rat(0));
    for (int i = m - 1; i >= 0; --i) rest[i] = rest[i + 1] + fmin[i];
    std::function<void(int, Rat)> rec = [&](int i, Rat used) {
      if (i == m) {
        leaf();
        return;
      }
      for (long t = 0;; ++t) {
        Rat v = used + f(i, t);
        if (v + rest[i + 1] > budget) {
          if (t >= argmin[i]) break;
          continue;
        }
        n[i] = t;
        rec(i + 1, v);
      }
      n[i] = 0;
    };
    rec(0, Rat(0));
    return out;
  }

  // M = A/2 = L D L^T
  std::vector<std::vector<Rat>> L(m, std::vector<Rat>(m, Rat(0)));
  std::vector<Rat> D(m);
  for (int k = 0; k < m; ++k) {
    Rat dk = s.quadratic[k][k] / 2;
    for (int j = 0; j < k; ++j) dk -= L[k][j] * L[k][j] * D[j];
    if (dk <= 0) throw std::domain_error("fermionic sum exponent does not grow on the summation cone");
    D[k] = dk;
    L[k][k] = 1;
    for (int i = k + 1; i < m; ++i) {
      Rat v = s.quadratic[i][k] / 2;
      for (int j = 0; j < k; ++j) v -= L[i][j] * L[k][j] * D[j];
      L[i][k] = v / dk;
    }
  }
  // shift m0 solving A m0 = b, so the exponent is (n+m0)^T M (n+m0) - m0^T M m0
  std::vector<Rat> z(m), w(m), m0(m);
  for (int i = 0; i < m; ++i) {
    z[i] = s.linear[i] / 2;
    for (int j = 0; j < i; ++j) z[i] -= L[i][j] * z[j];
  }
  for (int i = 0; i < m; ++i) w[i] = z[i] / D[i];
  for (int i = m - 1; i >= 0; --i) {
    m0[i] = w[i];
    for (int j = i + 1; j < m; ++j) m0[i] -= L[j][i] * m0[j];
  }
  Rat shift = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) shift += m0[i] * m0[j] * s.quadratic[i][j] / 2;
  std::vector<Rat> y(m);
  std::function<void(int, Rat)> rec = [&](int k, Rat remaining) {
    if (k < 0) {
      leaf();
      return;
    }
    Rat a = m0[k];
    for (int i = k + 1; i < m; ++i) a += L[i][k] * y[i];
    double r = std::sqrt(std::max(0.0, Rat(remaining / D[k]).get_d()));
    double ad = a.get_d();
    long lo = std::max<long>(0, static_cast<long>(std::ceil(-ad - r)) - 1);
    long hi = static_cast<long>(std::floor(-ad + r)) + 1;
    for (long t = lo; t <= hi; ++t) {
      Rat sq = (Rat(t) + a) * (Rat(t) + a) * D[k];
      if (sq > remaining) continue;
      n[k] = t;
      y[k] = Rat(t) + m0[k];
      rec(k - 1, remaining - sq);
    }
    n[k] = 0;
  };
  rec(m - 1, budget + shift);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

long grid_of(const FermionicSumSpec& s) {
  long d = 1;
  for (int i = 0; i < s.dim; ++i) {
    d = lcm_denom(d, s.linear[i]);
    d = lcm_denom(d, Rat(s.quadratic[i][i] / 2));
    for (int j = i + 1; j < s.dim; ++j) d = lcm_denom(d, s.quadratic[i][j]);
  }
  for (const auto* fs : {&s.numerator, &s.denominator})
    for (const auto& f : *fs) d = lcm_denom(lcm_denom(d, f.exponent), f.step);
  return prefactor_grid(d, s.prefactor);
}

long grid_of(const BosonicSumSpec& s) {
  long d = 1;
  for (const auto& b : s.branches) {
    d = lcm_denom(lcm_denom(lcm_denom(d, b.quadratic), b.linear), b.constant);
    for (const auto& f : b.factors) d = lcm_denom(lcm_denom(d, f.slope), f.intercept);
  }
  return prefactor_grid(d, s.prefactor);
}

std::string validate_fermionic(const FermionicSumSpec& s) {
  if (s.dim < 0) return "negative dimension";
  if (static_cast<int>(s.quadratic.size()) != s.dim || static_cast<int>(s.linear.size()) != s.dim)
    return "quadratic/linear size does not match dim";
  for (int i = 0; i < s.dim; ++i) {
    if (static_cast<int>(s.quadratic[i].size()) != s.dim) return "quadratic form is not square";
    for (int j = 0; j < s.dim; ++j)
      if (s.quadratic[i][j] != s.quadratic[j][i]) return "quadratic form is not symmetric";
  }
  auto form_ok = [&](const AffineForm& f) { return static_cast<int>(f.coeffs.size()) <= s.dim; };
  for (const auto& f : s.numerator) {
    if (f.exponent < 0) return "numerator Pochhammer exponent must be >= 0";
    if (f.step <= 0) return "Pochhammer step must be positive";
    if (f.sign != 1 && f.sign != -1) return "Pochhammer sign must be +-1";
    if (!form_ok(f.length)) return "affine form longer than dim";
  }
  for (const auto& f : s.denominator) {
    if (f.exponent <= 0) return "denominator Pochhammer exponent must be > 0";
    if (f.step <= 0) return "Pochhammer step must be positive";
    if (f.sign != 1 && f.sign != -1) return "Pochhammer sign must be +-1";
    if (!form_ok(f.length)) return "affine form longer than dim";
  }
  for (const auto& b : s.binomials)
    if (!form_ok(b.top) || !form_ok(b.bottom)) return "affine form longer than dim";
  for (const auto& r : s.restrictions) {
    if (!form_ok(r.form)) return "affine form longer than dim";
    if (r.kind == Restriction::Kind::kCongruence && r.modulus <= 0) return "congruence modulus must be positive";
  }
  return "";
}

TruncatedSeries eval_fermionic(const FermionicSumSpec& s, long order) {
  if (order < 0) throw std::invalid_argument("negative order");
  std::string err = validate_fermionic(s);
  if (!err.empty()) throw std::invalid_argument("invalid fermionic spec: " + err);
  const long d = grid_of(s);
  const Rat top = order;  // exponents relative to the constant
  auto points = lattice_points(s, Rat(order));
  Rat lo = 0;
  for (const auto& p : points) lo = rmin(lo, p.second);
  Window acc(lo, top, d);
  std::map<std::pair<size_t, long>, TruncatedSeries> inverse;
  const long full = acc.terms_left(lo);
  auto inv = [&](size_t idx, long len) -> const TruncatedSeries& {
    auto key = std::make_pair(idx, len);
    auto it = inverse.find(key);
    if (it == inverse.end()) {
      const auto& f = s.denominator[idx];
      PochhammerSpec ps{f.sign, f.exponent, f.step, len};
      TruncatedSeries p = pochhammer(ps, full / d + 1, d).truncated_to(Rat(full, d));
      it = inverse.emplace(key, series_invert(p)).first;
    }
    return it->second;
  };
  for (const auto& [n, e] : points) {
    const Rat& start = e;
    long len = acc.terms_left(start);
    TruncatedSeries t = TruncatedSeries::one(len, d);
    bool zero = false;
    for (size_t k = 0; k < s.denominator.size() && !zero; ++k) {
      long l = s.denominator[k].length.eval(n);
      if (l < 0)
        zero = true;
      else
        t = series_mul(t, inv(k, l));
    }
    if (zero) continue;
    IntPolynomial num = IntPolynomial::constant(1);
    for (const auto& f : s.numerator) {
      long l = f.length.eval(n);
      if (l < 0) throw std::domain_error("numerator Pochhammer with negative length");
      num *= pochhammer_poly({f.sign, f.exponent, f.step, l}, d);
    }
    for (const auto& b : s.binomials) {
      long m = b.top.eval(n), k = b.bottom.eval(n);
      if (m < 0) {
        num = IntPolynomial();
        break;
      }
      num *= q_binomial(m, k).scaled_exponents(d);
    }
    if (num.is_zero()) continue;
    acc.add(series_mul_poly(t, num, d).shifted(start));
  }
  TruncatedSeries r = apply_prefactor(acc.result(), s.prefactor, d);
  return rewindow(r, 0).shifted(s.constant).coarsened();
}

TruncatedSeries eval_bosonic(const BosonicSumSpec& s, long order) {
  if (order < 0) throw std::invalid_argument("negative order");
  const long d = grid_of(s);
  const Rat top = order;  // exponents relative to the constant
  struct Term {
    size_t branch;
    long j;
    Rat low;
  };
  std::vector<Term> terms;
  for (size_t bi = 0; bi < s.branches.size(); ++bi) {
    const auto& b = s.branches[bi];
    if (b.quadratic <= 0) throw std::domain_error("bosonic exponent does not grow");
    if (b.sign != 1 && b.sign != -1) throw std::invalid_argument("branch sign must be +-1");
    Rat slope = abs(b.linear), spread = b.constant;
    for (const auto& f : b.factors) {
      if (f.sign != 1 && f.sign != -1) throw std::invalid_argument("term factor sign must be +-1");
      if (f.power > 0) {
        slope += abs(f.slope) * f.power;
        spread -= abs(f.intercept) * f.power;
      }
    }
    // low(j) >= constant + spread + a j^2 - slope |j|
    Rat target = top - spread;
    long radius = 0;
    while (!(Rat(radius) * 2 * b.quadratic >= slope &&
             b.quadratic * radius * radius - slope * radius > target))
      ++radius;
    for (long j = s.full_range ? -radius : 0; j <= radius; ++j) {
      Rat low = b.quadratic * j * j + b.linear * j + b.constant;
      for (const auto& f : b.factors) {
        Rat e = f.slope * j + f.intercept;
        if (f.power > 0 && e < 0) low += e * f.power;
        if (f.power < 0 && e <= 0) throw std::domain_error("non-invertible term factor");
      }
      if (low <= top) terms.push_back({bi, j, low});
    }
  }
  Rat lo = 0;
  for (const auto& t : terms) lo = rmin(lo, t.low);
  Window acc(lo, top, d);
  for (const auto& [bi, j, low] : terms) {
    const auto& b = s.branches[bi];
    Rat e0 = b.quadratic * j * j + b.linear * j + b.constant;
    IntPolynomial p = IntPolynomial::monomial(grid_index(e0, d));
    long len = acc.terms_left(low);
    TruncatedSeries t = TruncatedSeries::one(len, d);
    for (const auto& f : b.factors) {
      long e = grid_index(f.slope * j + f.intercept, d);
      IntPolynomial one_minus = IntPolynomial::constant(1) - IntPolynomial::monomial(e, f.sign);
      if (f.power > 0) {
        for (int k = 0; k < f.power; ++k) p *= one_minus;
      } else if (f.power < 0) {
        std::vector<Int> g(len + 1, Int(0));
        Int v = 1;
        for (long i = 0; i <= len; i += e, v *= f.sign) g[i] = v;
        TruncatedSeries geo(0, d, std::move(g));
        for (int k = 0; k < -f.power; ++k) t = series_mul(t, geo);
      }
    }
    if (p.is_zero()) continue;
    int sign = b.sign * ((b.alternating && (j % 2 != 0)) ? -1 : 1);
    acc.add(series_mul_poly(t, p, d), sign);
  }
  TruncatedSeries r = apply_prefactor(acc.result(), s.prefactor, d);
  return rewindow(r, 0).shifted(s.constant).coarsened();
}

SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b) {
  SeriesComparison rep;
  long d = std::lcm(a.denom(), b.denom());
  d = lcm_denom(d, Rat(a.offset() - b.offset()));
  rep.denom = d;
  rep.top = rmin(a.top(), b.top());
  Rat start = rmin(a.offset(), b.offset());
  if (rep.top < start) return rep;
  long steps = floor_index(rep.top - start, d);
  for (long i = 0; i <= steps; ++i) {
    Rat e = start + Rat(i, d);
    e.canonicalize();
    Int x = a.coeff_at(e), y = b.coeff_at(e);
    if (x != y) {
      rep.equal = false;
      rep.first_difference = e;
      rep.left = x;
      rep.right = y;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

long pair_grid(const BaileyPair& p) {
  long d = lcm_denom(1, p.base);
  for (const auto* v : {&p.alpha, &p.beta})
    for (const auto& s : *v) d = lcm_denom(std::lcm(d, s.denom()), s.offset());
  return d;
}

IntPolynomial finite_poch(int sign, const Rat& exponent, long len, long d) {
  return pochhammer_poly({sign, exponent, 1, len}, d);
}

// (rho)_n (aq/rho)^n, i.e. prod_{j<n} (sign q^{-e} - q^j), or (-1)^n q^{C(n,2)} at infinity
IntPolynomial half_multiplier(const BaileyParam& r, long n, long d) {
  if (r.infinite) return IntPolynomial::monomial(n * (n - 1) / 2 * d, n % 2 ? -1 : 1);
  IntPolynomial p = IntPolynomial::constant(1);
  long e = grid_index(-r.exponent, d);
  for (long j = 0; j < n; ++j) p *= IntPolynomial::monomial(e, r.sign) - IntPolynomial::monomial(j * d);
  return p;
}

struct Lemma {
  Rat base;
  BaileyParam rho, sigma;
  long d;
  IntPolynomial multiplier(long n) const {
    return half_multiplier(rho, n, d) * half_multiplier(sigma, n, d) *
           IntPolynomial::monomial(grid_index((base + 1) * n, d));
  }
  // (aq/rho)_n (aq/sigma)_n
  IntPolynomial shifted_poch(long n) const {
    IntPolynomial p = IntPolynomial::constant(1);
    for (const auto* r : {&rho, &sigma})
      if (!r->infinite) p *= finite_poch(r->sign, base + 1 - r->exponent, n, d);
    return p;
  }
  // (aq/(rho sigma))_m
  IntPolynomial joint_poch(long m) const {
    if (rho.infinite || sigma.infinite) return IntPolynomial::constant(1);
    return finite_poch(rho.sign * sigma.sign, base + 1 - rho.exponent - sigma.exponent, m, d);
  }
};

Lemma make_lemma(const BaileyPair& p, const BaileyParam& rho, const BaileyParam& sigma) {
  long d = pair_grid(p);
  for (const auto* r : {&rho, &sigma}) {
    if (r->infinite) continue;
    if (r->sign != 1 && r->sign != -1) throw std::invalid_argument("Bailey parameter sign must be +-1");
    d = lcm_denom(d, r->exponent);
  }
  return {p.base, rho, sigma, d};
}

TruncatedSeries accumulate(std::optional<TruncatedSeries>& acc, const TruncatedSeries& t) {
  acc = acc ? series_add(*acc, t) : t;
  return *acc;
}

TruncatedSeries clip(const TruncatedSeries& s, const Rat& top) {
  if (s.offset() > top) return TruncatedSeries::zero(0, s.denom(), top);
  return s.truncated_to(top);
}

void check_base(const Rat& base) {
  if (base <= -1) throw std::invalid_argument("Bailey base exponent must exceed -1");
}

}  // namespace

BaileyPair unit_pair(const Rat& base, long n_max, long order) {
  check_base(base);
  long d = lcm_denom(1, base);
  Rat top = order;
  BaileyPair p;
  p.base = base;
  p.top = top;
  for (long n = 0; n <= n_max; ++n) {
    p.beta.push_back(n == 0 ? TruncatedSeries::one(order * d, d) : TruncatedSeries::zero(order * d, d));
    if (n == 0) {
      p.alpha.push_back(TruncatedSeries::one(order * d, d));
      continue;
    }
    IntPolynomial num = (IntPolynomial::constant(1) - IntPolynomial::monomial(grid_index(base + 2 * n, d))) *
                        finite_poch(1, base + 1, n - 1, d) *
                        IntPolynomial::monomial(n * (n - 1) / 2 * d, n % 2 ? -1 : 1);
    p.alpha.push_back(divide_by_poly(exact_series(num, d, top), finite_poch(1, 1, n, d), d));
  }
  return p;
}

BaileyPair trivial_pair(const Rat& base, long n_max, long order) {
  check_base(base);
  long d = lcm_denom(1, base);
  Rat top = order;
  BaileyPair p;
  p.base = base;
  p.top = top;
  for (long n = 0; n <= n_max; ++n) {
    p.alpha.push_back(n == 0 ? TruncatedSeries::one(order * d, d) : TruncatedSeries::zero(order * d, d));
    IntPolynomial den = finite_poch(1, 1, n, d) * finite_poch(1, base + 1, n, d);
    p.beta.push_back(divide_by_poly(TruncatedSeries::one(order * d, d), den, d));
  }
  return p;
}

BaileyPair rogers_pair(long n_max, long order) {
  Rat top = order;
  BaileyPair p;
  p.base = 0;
  p.top = top;
  for (long n = 0; n <= n_max; ++n) {
    p.beta.push_back(divide_by_poly(TruncatedSeries::one(order), finite_poch(1, 1, n, 1), 1));
    if (n == 0) {
      p.alpha.push_back(TruncatedSeries::one(order));
      continue;
    }
    IntPolynomial a = IntPolynomial::monomial(n * (3 * n - 1) / 2, n % 2 ? -1 : 1) *
                      (IntPolynomial::constant(1) + IntPolynomial::monomial(n));
    p.alpha.push_back(exact_series(a, 1, top));
  }
  return p;
}

BaileyCheck verify_bailey_pair(const BaileyPair& p, const Rat& order) {
  BaileyCheck rep;
  rep.top = rmin(order, p.top);
  long d = pair_grid(p);
  Rat lo = 0;
  for (const auto* v : {&p.alpha, &p.beta})
    for (const auto& s : *v) lo = rmin(lo, s.offset());
  if (rep.top < lo) return rep;
  long width = floor_index(rep.top - lo, d) + 1;
  std::map<std::pair<Rat, long>, TruncatedSeries> inverse;
  auto inv = [&](const Rat& e, long len) -> const TruncatedSeries& {
    auto key = std::make_pair(e, len);
    auto it = inverse.find(key);
    if (it == inverse.end())
      it = inverse.emplace(key, series_invert(pochhammer({1, e, 1, len}, width / d + 1, d))).first;
    return it->second;
  };
  for (long n = 0; n <= p.n_max(); ++n) {
    Window acc(lo, rep.top, d);
    for (long j = 0; j <= n; ++j) {
      const auto& a = p.alpha[j];
      if (a.offset() > rep.top) continue;
      TruncatedSeries t = series_mul(series_mul(clip(a, rep.top), inv(1, n - j)), inv(p.base + 1, n + j));
      acc.add(t);
    }
    auto cmp = compare_series(clip(p.beta[n], rep.top), acc.result());
    if (!cmp.equal) {
      rep.holds = false;
      rep.failing_n = n;
      rep.exponent = cmp.first_difference;
      return rep;
    }
  }
  return rep;
}

BaileyPair bailey_step(const BaileyPair& p, const BaileyParam& rho, const BaileyParam& sigma, const Rat& required) {
  Lemma lem = make_lemma(p, rho, sigma);
  const long d = lem.d;
  BaileyPair out;
  out.base = p.base;
  std::vector<IntPolynomial> mult;
  for (long n = 0; n <= p.n_max(); ++n) mult.push_back(lem.multiplier(n));
  for (long n = 0; n <= p.n_max(); ++n) {
    IntPolynomial den = lem.shifted_poch(n);
    out.alpha.push_back(divide_by_poly(series_mul_poly(p.alpha[n], mult[n], d), den, d));
    std::optional<TruncatedSeries> acc;
    for (long j = 0; j <= n; ++j) {
      IntPolynomial num = mult[j] * lem.joint_poch(n - j);
      if (num.is_zero()) continue;
      TruncatedSeries t = series_mul_poly(p.beta[j], num, d);
      accumulate(acc, divide_by_poly(t, finite_poch(1, 1, n - j, d), d));
    }
    if (!acc) acc = TruncatedSeries::zero(0, d, p.top);
    out.beta.push_back(divide_by_poly(*acc, den, d));
  }
  Rat top = out.alpha[0].top();
  for (const auto* v : {&out.alpha, &out.beta})
    for (const auto& s : *v) top = rmin(top, s.top());
  if (top < required) {
    Rat need = p.top + (required - top);
    need.canonicalize();
    throw std::runtime_error("insufficient input order: input exact through q^" + p.top.get_str() +
                             " gives output through q^" + top.get_str() + "; need input through q^" +
                             need.get_str());
  }
  out.top = required;
  for (auto* v : {&out.alpha, &out.beta})
    for (auto& s : *v) s = clip(s, required);
  return out;
}

BaileySums bailey_sums(const BaileyPair& p, const BaileyParam& rho, const BaileyParam& sigma, const Rat& top) {
  Lemma lem = make_lemma(p, rho, sigma);
  const long d = lem.d;
  bool grows = rho.infinite || sigma.infinite || p.base + 1 - rho.exponent - sigma.exponent > 0;
  if (!grows) throw std::domain_error("Bailey sum does not converge for these parameters");
  Rat floor_offset = 0;
  for (const auto* v : {&p.alpha, &p.beta})
    for (const auto& s : *v) floor_offset = rmin(floor_offset, s.offset());
  long need = 0;
  for (;; ++need) {
    IntPolynomial m = lem.multiplier(need);
    if (m.is_zero() || Rat(m.min_exponent(), d) + floor_offset > top) break;
  }
  if (need - 1 > p.n_max())
    throw std::runtime_error("pair index range too short: need n_max >= " + std::to_string(need - 1));
  std::optional<TruncatedSeries> lhs, rhs;
  for (long n = 0; n < need; ++n) {
    IntPolynomial m = lem.multiplier(n);
    accumulate(lhs, series_mul_poly(p.beta[n], m, d));
    accumulate(rhs, divide_by_poly(series_mul_poly(p.alpha[n], m, d), lem.shifted_poch(n), d));
  }
  std::vector<PrefactorTerm> pre;
  for (const auto* r : {&rho, &sigma})
    if (!r->infinite) pre.push_back({{r->sign, p.base + 1 - r->exponent, 1, std::nullopt}, 1});
  pre.push_back({{1, p.base + 1, 1, std::nullopt}, -1});
  if (!rho.infinite && !sigma.infinite)
    pre.push_back({{rho.sign * sigma.sign, p.base + 1 - rho.exponent - sigma.exponent, 1, std::nullopt}, -1});
  TruncatedSeries r = apply_prefactor(*rhs, pre, d);
  BaileySums out{*lhs, r};
  for (auto* s : {&out.lhs, &out.rhs}) {
    if (s->top() < top)
      throw std::runtime_error("insufficient pair order for the summed identity through q^" + top.get_str());
    *s = clip(*s, top);
  }
  return out;
}

}  // namespace fermi
