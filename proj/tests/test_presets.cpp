#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fermi/presets.hpp"

using namespace fermi;

namespace {

const std::string kShipped = FERMI_SHIPPED_PRESETS;
const std::string kFixtures = std::string(FERMI_TEST_DATA) + "/fixtures/presets";

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST_CASE("shipped registry loads with versions and orders") {
  auto reg = load_registry(kShipped);
  CHECK(!reg.version.empty());
  CHECK(reg.presets.size() >= 8);
  for (const auto& p : reg.presets) {
    INFO(p.name);
    CHECK(p.order >= 20);
    CHECK(!p.note.empty());
  }
  CHECK_THROWS_AS(reg.get("no-such-character"), UnknownPreset);
}

TEST_CASE("every shipped preset verifies to its declared order") {
  auto reg = load_registry(kShipped);
  for (const auto& p : reg.presets) {
    auto r = character(p, p.order);
    INFO(p.name, " first difference at ",
         r.comparison.first_difference ? format_rat(*r.comparison.first_difference) : "-");
    CHECK(r.comparison.equal);
    CHECK(r.comparison.top >= p.offset + p.order);
    MESSAGE(p.name << ": equal through q^" << format_rat(r.comparison.top) << " on grid 1/" << r.denom);
  }
}

TEST_CASE("order zero leaves leading coefficient one") {
  auto reg = load_registry(kShipped);
  for (const auto& p : reg.presets) {
    INFO(p.name);
    auto r = character(p, 0);
    CHECK(r.fermionic.coeff_at(p.offset) == 1);
    CHECK(r.bosonic.coeff_at(p.offset) == 1);
    CHECK(r.comparison.equal);
  }
}

TEST_CASE("the rogers-ramanujan presets against the product side") {
  auto reg = load_registry(kShipped);
  // 1/prod (1-q^n), n = 1,4 mod 5, computed directly
  TruncatedSeries prod = TruncatedSeries::one(50);
  for (long n = 1; n <= 50; ++n)
    if (n % 5 == 1 || n % 5 == 4) {
      IntPolynomial f = IntPolynomial::constant(1) - IntPolynomial::monomial(n);
      prod = series_mul(prod, series_invert(series_from_poly(f, 50)));
    }
  auto r = character(reg.get("rogers-ramanujan-1"), 50);
  CHECK(compare_series(r.fermionic, prod.shifted(Rat(-1, 60))).equal);
}

TEST_CASE("perturbed fixtures fail with a reported first discrepancy") {
  auto reg = load_registry(kFixtures);
  for (const auto& p : reg.presets) {
    auto r = character(p, p.order);
    INFO(p.name);
    CHECK_FALSE(r.comparison.equal);
    REQUIRE(r.comparison.first_difference.has_value());
    CHECK(r.comparison.left != r.comparison.right);
    MESSAGE(p.name << ": first discrepancy at q^" << format_rat(*r.comparison.first_difference) << " ("
                   << r.comparison.left.get_str() << " vs " << r.comparison.right.get_str() << ")");
  }
  // linear term 0 -> 1 loses the q^1 term: 1 vs 0 relative to the offset
  auto r = character(reg.get("rr1-perturbed"), 20);
  CHECK(*r.comparison.first_difference == Rat(1) - Rat(1, 60));
  CHECK(r.comparison.left == 0);
  CHECK(r.comparison.right == 1);
}

TEST_CASE("registry refuses a preset without a declared order") {
  CHECK_THROWS_WITH_AS(load_registry(kFixtures + "/unordered"),
                       doctest::Contains("declares no verification order"), PresetError);
}

TEST_CASE("malformed presets are rejected") {
  json base = read_json(kShipped + "/rogers-ramanujan-1.json");
  auto bad = base;
  bad["format"] = 2;
  CHECK_THROWS_AS(parse_preset(bad), PresetError);
  bad = base;
  bad["fermionic"]["quadratic"] = json::array({json::array({1, 2})});
  CHECK_THROWS_AS(parse_preset(bad), PresetError);
  bad = base;
  bad["bosonic"]["branches"][0]["quadratic"] = 0;
  CHECK_THROWS_AS(parse_preset(bad), PresetError);
  bad = base;
  bad["offset"] = "1/0";
  CHECK_THROWS_AS(parse_preset(bad), PresetError);
  bad = base;
  bad["fermionic"]["restrictions"] = json::array({{{"kind", "odd"}, {"form", 0}}});
  CHECK_THROWS_AS(parse_preset(bad), PresetError);
  CHECK_NOTHROW(parse_preset(base));
}

TEST_CASE("preset directory override") {
  CHECK(default_preset_dir() == kShipped);
  setenv("FERMI_PRESET_DIR", kFixtures.c_str(), 1);
  CHECK(default_preset_dir() == kFixtures);
  unsetenv("FERMI_PRESET_DIR");
}
