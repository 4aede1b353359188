#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fermi/combinat.hpp"

namespace fermi {

// L_i^{(a)}: number of tensor factors of rectangle shape a x i (rows: a = 1)
struct MultiplicityArray {
  int n = 0;
  std::map<std::pair<int, int>, int> counts;

  static MultiplicityArray rows(int n, const std::vector<int>& row_lengths);
  bool rows_only() const;
  int total_boxes() const;
  std::vector<int> row_lengths() const;  // rows only, sorted decreasing
  friend bool operator==(const MultiplicityArray&, const MultiplicityArray&) = default;
};

using Configuration = std::vector<Partition>;  // nu^{(1)}, ..., nu^{(n-1)}

struct RcRow {
  int length = 0;
  long rigging = 0;
  friend bool operator==(const RcRow&, const RcRow&) = default;
  friend auto operator<=>(const RcRow&, const RcRow&) = default;
};

struct RiggedConfiguration {
  int n = 0;
  std::vector<std::vector<RcRow>> parts;  // parts[a-1]

  Configuration config() const;
  void canonicalize();  // rows by (length desc, rigging desc)
  friend bool operator==(const RiggedConfiguration&, const RiggedConfiguration&) = default;
  friend auto operator<=>(const RiggedConfiguration&, const RiggedConfiguration&) = default;
};

RiggedConfiguration empty_rc(int n);

long vacancy(const Configuration& nu, const MultiplicityArray& L, int a, int i);
// sizes |nu^{(a)}| forced by (L, weight)
std::vector<int> configuration_sizes(const MultiplicityArray& L, const Composition& weight);
Composition rc_weight(const RiggedConfiguration& rc, const MultiplicityArray& L);

// Least admissible rigging of row `row` of nu^{(a)} given every other rigging:
// -i plus the largest excess of min-overlaps over slacks along chains of rows
// in consecutive partitions through this row.
long lower_bound(const RiggedConfiguration& rc, int a, int row);

// Empty string when valid, otherwise the first violation.
std::string validate_rc(const RiggedConfiguration& rc, const MultiplicityArray& L, const Composition& weight);

std::vector<RiggedConfiguration> enumerate_rc(const MultiplicityArray& L, const Composition& weight);
// classical objects: all lower bounds 0
std::vector<RiggedConfiguration> enumerate_rc_restricted(const MultiplicityArray& L, const Composition& weight);
std::vector<Configuration> enumerate_configurations(const MultiplicityArray& L, const Composition& weight);

long config_cocharge(const Configuration& nu);
long cocharge(const RiggedConfiguration& rc);

}  // namespace fermi
