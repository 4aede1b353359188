#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermi/crystals.hpp"
#include "fermi/rc.hpp"

namespace fermi {

struct KostkaInstance {
  int n = 0;
  std::vector<int> shapes;  // row lengths of the tensor factors, in order
  Composition weight;

  MultiplicityArray multiplicities() const { return MultiplicityArray::rows(n, shapes); }
  void validate() const;
};

// target = q^shift * source(q^sign)
struct Normalization {
  int sign = 1;
  long shift = 0;
  friend bool operator==(const Normalization&, const Normalization&) = default;
};

IntPolynomial apply_normalization(const Normalization& nz, const IntPolynomial& p);

IntPolynomial fermionic_kostka(const KostkaInstance& inst);              // sum over rigged configurations
IntPolynomial fermionic_kostka_closed_form(const KostkaInstance& inst);  // configuration sum with q-binomials
IntPolynomial path_kostka(const KostkaInstance& inst);
IntPolynomial restricted_kostka(const KostkaInstance& inst);   // highest-weight paths
IntPolynomial restricted_fermionic(const KostkaInstance& inst);  // all lower bounds 0, q-binomial product

// fermionic -> path; frozen value, see calibrate_fermionic_path()
Normalization fermionic_path_normalization();
// restricted_kostka -> kostka_foulkes for rows mu: sign -1, shift n(mu) + offset
Normalization classical_normalization(const Partition& mu);

struct Calibration {
  std::string instance;
  Normalization value;
};
// The designated asymmetric instances that fix the frozen constants.
Calibration calibrate_fermionic_path();
Calibration calibrate_classical();  // value.shift is the offset beyond n(mu)

struct IdentityReport {
  KostkaInstance instance;
  IntPolynomial fermionic;
  IntPolynomial path;
  Normalization normalization;
  bool equal = false;
  std::optional<long> first_difference;  // exponent
};

IdentityReport verify_identity(const KostkaInstance& inst);
IdentityReport compare_sides(const KostkaInstance& inst, const IntPolynomial& fermionic, const IntPolynomial& path);

}  // namespace fermi
