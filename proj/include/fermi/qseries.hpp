#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermi/qalg.hpp"

namespace fermi {

// integer affine form c + sum coeffs[i] n_i
struct AffineForm {
  std::vector<long> coeffs;
  long constant = 0;
  long eval(const std::vector<long>& n) const;
};

// (sign q^exponent; q^step)_{length(n)}
struct SumFactor {
  int sign = 1;
  Rat exponent = 1;
  Rat step = 1;
  AffineForm length;
};

struct BinomialFactor {
  AffineForm top, bottom;
};

struct Restriction {
  enum class Kind { kGe, kCongruence };
  Kind kind = Kind::kGe;
  AffineForm form;  // form >= 0, or form = residue mod modulus
  long modulus = 1;
  long residue = 0;
};

// symbol^power, power may be negative
struct PrefactorTerm {
  PochhammerSpec symbol;
  int power = 1;
};

// q^{c + n.A.n/2 + b.n} * prod numerator / prod denominator * prod binomials,
// summed over n in N^dim satisfying the restrictions, times the prefactor.
// 1/(x;q)_L vanishes for L < 0.
struct FermionicSumSpec {
  int dim = 0;
  std::vector<std::vector<Rat>> quadratic;
  std::vector<Rat> linear;
  Rat constant = 0;
  std::vector<SumFactor> numerator, denominator;
  std::vector<BinomialFactor> binomials;
  std::vector<Restriction> restrictions;
  std::vector<PrefactorTerm> prefactor;
};

// (1 - sign q^{slope j + intercept})^power
struct TermFactor {
  int sign = 1;
  Rat slope = 0;
  Rat intercept = 0;
  int power = 1;
};

// sign (-1)^{j if alternating} q^{quadratic j^2 + linear j + constant} prod factors
struct BosonicBranch {
  int sign = 1;
  bool alternating = false;
  Rat quadratic = 0, linear = 0, constant = 0;
  std::vector<TermFactor> factors;
};

struct BosonicSumSpec {
  bool full_range = true;  // j in Z, otherwise j >= 0
  std::vector<BosonicBranch> branches;
  Rat constant = 0;
  std::vector<PrefactorTerm> prefactor;
};

long grid_of(const FermionicSumSpec& spec);
long grid_of(const BosonicSumSpec& spec);
std::string validate_fermionic(const FermionicSumSpec& spec);  // empty if fine

// Exact coefficients for exponents constant .. constant + order.
TruncatedSeries eval_fermionic(const FermionicSumSpec& spec, long order);
TruncatedSeries eval_bosonic(const BosonicSumSpec& spec, long order);

struct SeriesComparison {
  bool equal = true;
  Rat top;     // compared through this exponent
  long denom = 1;
  std::optional<Rat> first_difference;
  Int left, right;  // coefficients at the first difference
};

SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b);

// ---------------------------------------------------------------------------
// Bailey pairs relative to a = q^base

struct BaileyParam {
  bool infinite = true;
  int sign = 1;
  Rat exponent = 0;  // sign q^exponent when finite
  static BaileyParam inf() { return {}; }
  static BaileyParam finite(int sign, Rat exponent) { return {false, sign, std::move(exponent)}; }
};

struct BaileyPair {
  Rat base = 0;
  Rat top = 0;  // every entry is exact through q^top
  std::vector<TruncatedSeries> alpha, beta;  // indices 0..n_max
  long n_max() const { return static_cast<long>(alpha.size()) - 1; }
};

// beta = delta_{n0}
BaileyPair unit_pair(const Rat& base, long n_max, long order);
// alpha = delta_{n0}, beta_n = 1/((q)_n (aq)_n)
BaileyPair trivial_pair(const Rat& base, long n_max, long order);
// a = 1: beta_n = 1/(q)_n, alpha_n = (-1)^n q^{n(3n-1)/2} (1 + q^n) for n >= 1
BaileyPair rogers_pair(long n_max, long order);

struct BaileyCheck {
  bool holds = true;
  Rat top;
  std::optional<long> failing_n;
  std::optional<Rat> exponent;
};

BaileyCheck verify_bailey_pair(const BaileyPair& p, const Rat& order);

// One application of the Bailey lemma.  Throws if the result would not be
// exact through q^required.
BaileyPair bailey_step(const BaileyPair& p, const BaileyParam& rho, const BaileyParam& sigma, const Rat& required);

// n -> infinity form of the lemma:
//   sum_n M(n) beta_n = prefactor * sum_n M(n) alpha_n / ((aq/rho)_n (aq/sigma)_n)
struct BaileySums {
  TruncatedSeries lhs, rhs;
};
BaileySums bailey_sums(const BaileyPair& p, const BaileyParam& rho, const BaileyParam& sigma, const Rat& top);

}  // namespace fermi
