#include <set>

#include "doctest.h"
#include "fermi/bijection.hpp"

using namespace fermi;

TEST_CASE("small examples") {
  Path one{2, {{1}}};
  CHECK(path_to_rc(one) == empty_rc(2));
  CHECK(rc_to_path(empty_rc(2), {1}) == one);
  auto paths = enumerate_paths({1, 1}, 2, {1, 1});
  std::set<RiggedConfiguration> images;
  for (const auto& p : paths) images.insert(path_to_rc(p));
  auto objs = enumerate_rc(MultiplicityArray::rows(2, {1, 1}), {1, 1});
  CHECK(images == std::set<RiggedConfiguration>(objs.begin(), objs.end()));
}

TEST_CASE("invalid input is rejected") {
  RiggedConfiguration bad = empty_rc(2);
  bad.parts[0].push_back({1, 5});
  CHECK_THROWS_WITH_AS(rc_to_path(bad, {1, 1}), doctest::Contains("invalid rigged configuration"), std::invalid_argument);
}

TEST_CASE("statistic on single factors") {
  auto r = check_statistic(Path{3, {{1, 2, 2, 3}}});
  CHECK(r.energy == 0);
  CHECK(r.cocharge == 0);
  CHECK(r.shift == 0);
}

TEST_CASE("round trips, weight and statistic on the grid incl. rank 4") {
  long objects = 0;
  for (int n = 1; n <= 4; ++n)
    for (int boxes = 0; boxes <= (n == 4 ? 5 : 6); ++boxes)
      for (const auto& shapes : compositions(boxes)) {
        auto L = MultiplicityArray::rows(n, shapes);
        for (const auto& w : weak_compositions(boxes, n)) {
          std::set<RiggedConfiguration> images;
          for (const auto& p : enumerate_paths(shapes, n, w)) {
            auto rc = path_to_rc(p);
            CHECK(validate_rc(rc, L, w).empty());
            CHECK(rc_weight(rc, L) == w);
            CHECK(rc_to_path(rc, shapes) == p);
            auto st = check_statistic(p);
            CHECK(st.energy == st.cocharge);
            images.insert(rc);
            ++objects;
          }
          for (const auto& rc : enumerate_rc(L, w)) {
            CHECK(images.count(rc) == 1);
            CHECK(path_to_rc(rc_to_path(rc, shapes)) == rc);
          }
        }
      }
  MESSAGE("objects checked: " << objects);
}
