#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fermi {

using Int = mpz_class;
using Rat = mpq_class;

// Laurent polynomial in q, sparse, no zero coefficients stored.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  static IntPolynomial constant(const Int& c);
  static IntPolynomial monomial(long exp, const Int& c = 1);

  const std::map<long, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long min_exponent() const;
  long max_exponent() const;
  Int coeff(long exp) const;
  Int at_one() const;
  Int sum_abs() const;

  void add_term(long exp, const Int& c);
  IntPolynomial shifted(long k) const;
  IntPolynomial inverted_q() const;  // p(q^{-1})
  IntPolynomial scaled_exponents(long d) const;  // p(q^d)

  IntPolynomial operator-() const;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  IntPolynomial& operator+=(const IntPolynomial& b);
  IntPolynomial& operator*=(const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  std::map<long, Int> terms_;
};

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);

// Gaussian binomial [m choose k]_q; zero outside 0 <= k <= m.
IntPolynomial q_binomial(long m, long k);

// q^offset * sum_{i=0..order} coeffs[i] q^{i/denom}; only coefficients up to
// `order` are known.
class TruncatedSeries {
 public:
  TruncatedSeries();
  TruncatedSeries(Rat offset, long denom, std::vector<Int> coeffs);
  static TruncatedSeries zero(long order, long denom = 1, Rat offset = 0);
  static TruncatedSeries one(long order, long denom = 1);

  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  long denom() const { return denom_; }
  const Rat& offset() const { return offset_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Rat top() const;  // highest exponent with a guaranteed coefficient
  Int coeff_at(const Rat& exponent) const;  // 0 below the window, throws above

  TruncatedSeries rescaled(long new_denom) const;
  TruncatedSeries truncated_to(const Rat& top) const;
  TruncatedSeries shifted(const Rat& e) const;  // q^e * s
  TruncatedSeries coarsened() const;  // smallest grid carrying the same data
  TruncatedSeries scaled(const Int& c) const;
  TruncatedSeries leading_normalized() const;  // strip leading zeros into the offset

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  Rat offset_;
  long denom_;
  std::vector<Int> coeffs_;
};

TruncatedSeries series_from_poly(const IntPolynomial& p, long order);
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_invert(const TruncatedSeries& s);
// s times an exact Laurent polynomial in q^{1/p_denom}; the order of s is kept.
TruncatedSeries series_mul_poly(const TruncatedSeries& s, const IntPolynomial& p, long p_denom);

long lcm_denom(long d, const Rat& r);

struct PochhammerSpec {
  int sign = 1;        // symbol (sign * q^exponent; q^step)_length
  Rat exponent = 1;
  Rat step = 1;
  std::optional<long> length;  // nullopt = infinity
};

// Exact finite product as a polynomial in q^{1/denom}; denom must clear
// exponent and step.
IntPolynomial pochhammer_poly(const PochhammerSpec& spec, long denom);
// Expansion with `order` q-units beyond the offset, grid q^{1/d} where d is
// the least denominator clearing the spec (or a multiple `denom` if given).
TruncatedSeries pochhammer(const PochhammerSpec& spec, long order, long denom = 0);

}  // namespace fermi
