#include <algorithm>

#include "doctest.h"
#include "fermi/kostka.hpp"

using namespace fermi;

namespace {

IntPolynomial poly(std::initializer_list<std::pair<long, long>> terms) {
  IntPolynomial p;
  for (auto [e, c] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

TEST_CASE("examples") {
  KostkaInstance empty{2, {}, {}};
  CHECK(fermionic_kostka(empty) == IntPolynomial::constant(1));
  CHECK(path_kostka(empty) == IntPolynomial::constant(1));
  KostkaInstance two{2, {1, 1}, {1, 1}};
  CHECK(fermionic_kostka(two) == poly({{0, 1}, {1, 1}}));
  CHECK(path_kostka(two) == poly({{0, 1}, {1, 1}}));
  CHECK(path_kostka({2, {2}, {1, 1}}) == IntPolynomial::constant(1));
  IntPolynomial three = path_kostka({2, {1, 1, 1}, {2, 1}});
  CHECK(three.at_one() == 3);
  CHECK(three.terms().size() == 3);
}

TEST_CASE("restricted examples") {
  CHECK(restricted_kostka({3, {2, 1}, {2, 1}}) == IntPolynomial::monomial(1, 1));
  CHECK(apply_normalization(classical_normalization({1, 1, 1}), restricted_kostka({3, {1, 1, 1}, {2, 1}})) ==
        poly({{1, 1}, {2, 1}}));
  auto r = restricted_kostka({2, {1, 1}, {2}});
  CHECK(r.at_one() == 1);
  CHECK(apply_normalization(classical_normalization({1, 1}), r) == poly({{1, 1}}));
  CHECK_THROWS(restricted_kostka({2, {1, 1}, {0, 2}}));
}

TEST_CASE("frozen normalizations match their calibrations") {
  auto fp = calibrate_fermionic_path();
  CHECK(fp.value == fermionic_path_normalization());
  auto cl = calibrate_classical();
  CHECK(cl.value == Normalization{-1, 0});
  CHECK(classical_normalization({2, 2, 1}) == Normalization{-1, 4});
  CHECK(fp.instance != cl.instance);
}

TEST_CASE("negative control: corrupted fermionic side is detected") {
  KostkaInstance inst{3, {2, 1, 1}, {2, 1, 1}};
  IntPolynomial f = fermionic_kostka(inst);
  IntPolynomial broken = f + IntPolynomial::monomial(f.max_exponent() + 1, 1) - IntPolynomial::monomial(f.max_exponent(), 1);
  auto rep = compare_sides(inst, broken, path_kostka(inst));
  CHECK_FALSE(rep.equal);
  REQUIRE(rep.first_difference.has_value());
  CHECK(*rep.first_difference == f.max_exponent());
  CHECK(verify_identity(inst).equal);
}

TEST_CASE("two fermionic evaluations and the path side agree on the grid") {
  for (int n = 1; n <= 3; ++n)
    for (int boxes = 0; boxes <= 6; ++boxes)
      for (const auto& shapes : compositions(boxes))
        for (const auto& w : weak_compositions(boxes, n)) {
          KostkaInstance inst{n, shapes, w};
          IntPolynomial f = fermionic_kostka(inst);
          CHECK(f == fermionic_kostka_closed_form(inst));
          CHECK(f == path_kostka(inst));
          CHECK(f.at_one() == Int(static_cast<unsigned long>(enumerate_paths(shapes, n, w).size())));
        }
}

TEST_CASE("closed form agrees beyond the grid") {
  for (const auto& inst : std::vector<KostkaInstance>{{4, {2, 2, 1, 1}, {1, 2, 2, 1}},
                                                      {4, {3, 1, 2}, {2, 1, 1, 2}},
                                                      {5, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}},
                                                      {3, {3, 3, 2}, {3, 2, 3}}})
    CHECK(fermionic_kostka(inst) == fermionic_kostka_closed_form(inst));
}

TEST_CASE("restricted fermionic sum equals highest weight energies") {
  for (int boxes = 1; boxes <= 6; ++boxes)
    for (const auto& lam : partitions(boxes))
      for (const auto& mu : partitions(boxes)) {
        KostkaInstance inst{static_cast<int>(lam.size()), mu, lam};
        IntPolynomial r = restricted_kostka(inst);
        CHECK(r == restricted_fermionic(inst));
        CHECK(apply_normalization(classical_normalization(mu), r) == kostka_foulkes(lam, mu));
      }
}

TEST_CASE("weight symmetry is recorded") {
  long symmetric = 0, total = 0;
  for (int n = 2; n <= 3; ++n)
    for (int boxes = 1; boxes <= 5; ++boxes)
      for (const auto& shapes : compositions(boxes))
        for (const auto& w : weak_compositions(boxes, n)) {
          Composition s = w;
          std::sort(s.begin(), s.end(), std::greater<>());
          ++total;
          symmetric += fermionic_kostka({n, shapes, w}) == fermionic_kostka({n, shapes, s});
        }
  MESSAGE("weight-symmetric instances: " << symmetric << " of " << total);
  CHECK(symmetric == total);
}
