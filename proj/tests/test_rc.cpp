#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "fermi/crystals.hpp"
#include "fermi/rc.hpp"

using namespace fermi;

namespace {

RiggedConfiguration rc_of(int n, std::vector<std::vector<RcRow>> parts) {
  RiggedConfiguration rc{n, std::move(parts)};
  rc.canonicalize();
  return rc;
}

// every chain of rows in consecutive partitions has enough slack
bool chain_condition(const RiggedConfiguration& rc) {
  const int m = static_cast<int>(rc.parts.size());
  std::function<bool(int, int, long, long)> walk = [&](int a, int prev_len, long slack, long overlap) {
    for (const auto& r : rc.parts[a]) {
      long ov = overlap + (prev_len > 0 ? std::min(prev_len, r.length) : 0);
      long sl = slack + r.rigging + r.length;
      if (sl < ov) return false;
      if (a + 1 < m && !walk(a + 1, r.length, sl, ov)) return false;
    }
    return true;
  };
  for (int a = 0; a < m; ++a)
    if (!walk(a, 0, 0, 0)) return false;
  return true;
}

// brute force: all rigging assignments in [-i, p] satisfying the chain condition
long brute_count(const MultiplicityArray& L, const Composition& w) {
  long total = 0;
  for (const auto& nu : enumerate_configurations(L, w)) {
    RiggedConfiguration rc = empty_rc(L.n);
    std::vector<std::pair<int, int>> rows;
    for (int a = 1; a <= L.n - 1; ++a)
      for (int i : nu[a - 1]) {
        rc.parts[a - 1].push_back({i, 0});
        rows.emplace_back(a, static_cast<int>(rc.parts[a - 1].size()) - 1);
      }
    std::set<RiggedConfiguration> seen;
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == rows.size()) {
        if (!chain_condition(rc)) return;
        RiggedConfiguration c = rc;
        c.canonicalize();
        seen.insert(c);
        return;
      }
      auto [a, idx] = rows[k];
      int i = rc.parts[a - 1][idx].length;
      for (long j = -i; j <= vacancy(nu, L, a, i); ++j) {
        rc.parts[a - 1][idx].rigging = j;
        rec(k + 1);
      }
    };
    rec(0);
    total += static_cast<long>(seen.size());
  }
  return total;
}

}  // namespace

TEST_CASE("vacancy examples") {
  auto L2 = MultiplicityArray::rows(2, {1, 1});
  CHECK(vacancy({{}}, L2, 1, 1) == 2);
  CHECK(vacancy({{}}, L2, 1, 3) == 2);
  CHECK(vacancy({{1}}, L2, 1, 1) == 0);
  auto L1 = MultiplicityArray::rows(2, {2});
  CHECK(vacancy({{1}}, L1, 1, 1) == -1);
  CHECK_THROWS(vacancy({{1}}, L1, 2, 1));
  CHECK_THROWS(vacancy({{1}}, L1, 1, 0));
}

TEST_CASE("lower bounds") {
  // lone row: -i
  auto rc = rc_of(2, {{{1, 0}}});
  CHECK(lower_bound(rc, 1, 0) == -1);
  // a neighbour row with little slack pushes the bound up
  auto chain = rc_of(3, {{{2, -2}}, {{1, 0}}});
  CHECK(lower_bound(chain, 2, 0) == 0);
  CHECK(lower_bound(chain, 1, 0) == -2);
  CHECK_THROWS(lower_bound(chain, 3, 0));
  CHECK_THROWS(lower_bound(chain, 1, 1));
}

TEST_CASE("enumerate_rc examples") {
  auto e = enumerate_rc(MultiplicityArray::rows(3, {}), {});
  REQUIRE(e.size() == 1);
  CHECK(e[0] == empty_rc(3));
  auto two = enumerate_rc(MultiplicityArray::rows(2, {1, 1}), {1, 1});
  CHECK(two.size() == 2);
  std::set<long> cc;
  for (const auto& rc : two) cc.insert(cocharge(rc));
  CHECK(cc == std::set<long>{0, 1});
  CHECK(enumerate_rc(MultiplicityArray::rows(2, {2}), {1, 1}).size() == 1);
}

TEST_CASE("cocharge") {
  CHECK(cocharge(empty_rc(4)) == 0);
  auto rc = rc_of(3, {{{2, 0}, {1, -1}}, {{1, 0}}});
  auto bumped = rc;
  bumped.parts[0][1].rigging += 1;
  CHECK(cocharge(bumped) == cocharge(rc) + 1);
  auto block = rc_of(2, {{{1, 0}, {1, -1}}});
  auto swapped = block;
  std::swap(swapped.parts[0][0], swapped.parts[0][1]);
  CHECK(cocharge(swapped) == cocharge(block));
}

TEST_CASE("enumeration matches brute force and path counts on the grid") {
  for (int n = 1; n <= 3; ++n)
    for (int boxes = 0; boxes <= 6; ++boxes)
      for (const auto& shapes : compositions(boxes)) {
        auto L = MultiplicityArray::rows(n, shapes);
        for (const auto& w : weak_compositions(boxes, n)) {
          auto objs = enumerate_rc(L, w);
          CHECK(objs.size() == enumerate_paths(shapes, n, w).size());
          if (boxes <= 5) CHECK(static_cast<long>(objs.size()) == brute_count(L, w));
          std::set<RiggedConfiguration> distinct(objs.begin(), objs.end());
          CHECK(distinct.size() == objs.size());
          for (const auto& rc : objs) CHECK(validate_rc(rc, L, w).empty());
        }
      }
}

TEST_CASE("restricted objects give Kostka numbers") {
  for (int boxes = 1; boxes <= 6; ++boxes)
    for (const auto& lam : partitions(boxes))
      for (const auto& mu : partitions(boxes)) {
        int n = std::max<int>(lam.size(), 1);
        auto L = MultiplicityArray::rows(n, mu);
        CHECK(Int(static_cast<unsigned long>(enumerate_rc_restricted(L, lam).size())) == kostka_number(lam, mu));
      }
}

TEST_CASE("vacancies ignore rigging order") {
  auto L = MultiplicityArray::rows(3, {2, 1, 1, 1});
  for (const auto& rc : enumerate_rc(L, {2, 2, 1})) {
    auto shuffled = rc;
    for (auto& part : shuffled.parts) std::reverse(part.begin(), part.end());
    CHECK(shuffled.config() == rc.config());
    CHECK(cocharge(shuffled) == cocharge(rc));
  }
}

TEST_CASE("validator rejects window violations") {
  auto L = MultiplicityArray::rows(2, {1, 1});
  CHECK(validate_rc(rc_of(2, {{{1, 0}}}), L, {1, 1}).empty());
  CHECK_FALSE(validate_rc(rc_of(2, {{{1, 1}}}), L, {1, 1}).empty());
  CHECK_FALSE(validate_rc(rc_of(2, {{{1, -2}}}), L, {1, 1}).empty());
  CHECK_FALSE(validate_rc(rc_of(2, {{{2, 0}}}), L, {1, 1}).empty());
}
