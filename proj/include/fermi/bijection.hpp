#pragma once

#include <vector>

#include "fermi/crystals.hpp"
#include "fermi/rc.hpp"

namespace fermi {

// Letter-by-letter bijection. Paths are read factor by factor from the left;
// the inverse peels off the rightmost factor first.
RiggedConfiguration path_to_rc(const Path& p);
// Factor order cannot be recovered from a multiplicity array, so the ordered
// row lengths are passed explicitly.
Path rc_to_path(const RiggedConfiguration& rc, const std::vector<int>& shapes);

struct StatisticReport {
  long energy = 0;
  long cocharge = 0;
  int sign = 1;  // energy = sign * cocharge + shift
  long shift = 0;
};

StatisticReport check_statistic(const Path& p);

}  // namespace fermi
