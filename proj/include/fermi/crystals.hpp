#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fermi/combinat.hpp"

namespace fermi {

using RowFactor = std::vector<int>;

// b_1 (x) b_2 (x) ... (x) b_L, factors stored in written order. The signature
// rule scans the word b_L b_{L-1} ... b_1 (rows left to right).
struct Path {
  int n = 0;
  std::vector<RowFactor> factors;
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

Composition path_content(const Path& p);
std::vector<int> path_shapes(const Path& p);
Word path_word(const Path& p);
void validate_path(const Path& p);

std::vector<Path> enumerate_paths(const std::vector<int>& shapes, int n, const Composition& weight);

std::optional<Path> e_op(const Path& p, int i);
std::optional<Path> f_op(const Path& p, int i);
bool is_highest_weight(const Path& p);

long local_energy(const RowFactor& u, const RowFactor& v);
// combinatorial R: u (x) v -> v' (x) u' with |v'| = |v|, |u'| = |u|
std::pair<RowFactor, RowFactor> r_matrix(const RowFactor& u, const RowFactor& v);
long intrinsic_energy(const Path& p);

}  // namespace fermi
