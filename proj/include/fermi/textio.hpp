#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fermi/bijection.hpp"
#include "fermi/qseries.hpp"
#include "json.hpp"

namespace fermi {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// polynomials: `1 + 2*q^2 - q^3`, `q^-1 + 1`, `0`
std::string format_poly(const IntPolynomial& p);
IntPolynomial parse_poly(const std::string& s);
json poly_to_json(const IntPolynomial& p);  // [[exponent, "coefficient"], ...]
IntPolynomial poly_from_json(const json& j);

Rat parse_rat(const std::string& s);
Rat rat_from_json(const json& j);  // integer or "a/b"
std::string format_rat(const Rat& r);
// q^5, q^-1, q^(3/2)
std::string format_qpow(const Rat& e);

// `3,2,1`; empty string is the empty list
std::vector<int> parse_int_list(const std::string& s);
std::string format_int_list(const std::vector<int>& v);

struct Rectangle {
  int rows = 1, cols = 1;
};
// `1x1,2x3` (rows x columns)
std::vector<Rectangle> parse_shapes(const std::string& s);

// `11/2`
Tableau parse_tableau(const std::string& s);
std::string format_tableau(const Tableau& t);

// `12(x)1`, factors in written order
Path parse_path(const std::string& s, int n);
std::string format_path(const Path& p);

json rc_to_json(const RiggedConfiguration& rc);
RiggedConfiguration rc_from_json(const json& j);

// series text: `offset -1/60, step 1/1, through q^(599/60): 1 1 ...`
std::string format_series(const TruncatedSeries& s);
json series_to_json(const TruncatedSeries& s);

}  // namespace fermi
