#include "fermi/textio.hpp"

#include <cctype>
#include <sstream>

namespace fermi {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

long parse_long(const std::string& s, const std::string& what) {
  std::string body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body = body.substr(1);
  if (!all_digits(body) || body.size() > 15) throw ParseError("bad " + what + ": '" + s + "'");
  return std::stol(s);
}

}  // namespace

std::string format_poly(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Int a = abs(c);
    bool neg = c < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

IntPolynomial parse_poly(const std::string& text) {
  // "1 2" must not read as 12
  for (size_t a = 0; a < text.size(); ++a) {
    if (!std::isalnum(static_cast<unsigned char>(text[a]))) continue;
    size_t b = a + 1;
    while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    if (b > a + 1 && b < text.size() && std::isalnum(static_cast<unsigned char>(text[b])))
      throw ParseError("missing operator in polynomial '" + text + "'");
  }
  std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  IntPolynomial p;
  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw ParseError("expected + or - in polynomial '" + text + "'");
    }
    first = false;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    Int coef = 1;
    bool has_coef = j > i;
    if (has_coef) coef = Int(s.substr(i, j - i));
    i = j;
    long exp = 0;
    bool has_q = false;
    if (has_coef && i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != 'q') throw ParseError("expected q after * in '" + text + "'");
    }
    if (i < s.size() && s[i] == 'q') {
      has_q = true;
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool paren = i < s.size() && s[i] == '(';
        if (paren) ++i;
        size_t k = i;
        if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        exp = parse_long(s.substr(i, k - i), "exponent");
        i = k;
        if (paren) {
          if (i >= s.size() || s[i] != ')') throw ParseError("unbalanced parenthesis in '" + text + "'");
          ++i;
        }
      }
    }
    if (!has_coef && !has_q) throw ParseError("malformed term in polynomial '" + text + "'");
    p.add_term(exp, sign * coef);
  }
  return p;
}

json poly_to_json(const IntPolynomial& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(json::array({e, c.get_str()}));
  return out;
}

IntPolynomial poly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array of [exponent, coefficient]");
  IntPolynomial p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) throw ParseError("bad polynomial term");
    Int c = t[1].is_string() ? Int(t[1].get<std::string>()) : Int(t[1].get<long>());
    p.add_term(t[0].get<long>(), c);
  }
  return p;
}

Rat parse_rat(const std::string& text) {
  std::string s = strip_spaces(text);
  auto slash = s.find('/');
  Int num(parse_long(s.substr(0, slash), "rational"));
  Int den = 1;
  if (slash != std::string::npos) {
    den = parse_long(s.substr(slash + 1), "rational");
    if (den <= 0) throw ParseError("bad rational denominator in '" + text + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ParseError("rational must be an integer or a string 'a/b'");
}

std::string format_rat(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

std::string format_qpow(const Rat& e) {
  std::string r = format_rat(e);
  return e.get_den() == 1 ? "q^" + r : "q^(" + r + ")";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::string s = strip_spaces(text);
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  size_t commas = 0;
  for (char c : s) commas += c == ',';
  while (std::getline(ss, item, ',')) {
    if (!all_digits(item)) throw ParseError("bad integer list '" + text + "'");
    out.push_back(static_cast<int>(parse_long(item, "integer")));
  }
  if (out.size() != commas + 1) throw ParseError("bad integer list '" + text + "'");
  return out;
}

std::string format_int_list(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<Rectangle> parse_shapes(const std::string& text) {
  std::string s = strip_spaces(text);
  std::vector<Rectangle> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  size_t commas = 0;
  for (char c : s) commas += c == ',';
  while (std::getline(ss, item, ',')) {
    auto x = item.find('x');
    if (x == std::string::npos) throw ParseError("shape '" + item + "' is not of the form RxC");
    std::string r = item.substr(0, x), c = item.substr(x + 1);
    if (!all_digits(r) || !all_digits(c)) throw ParseError("shape '" + item + "' is not of the form RxC");
    Rectangle rect{static_cast<int>(parse_long(r, "rows")), static_cast<int>(parse_long(c, "columns"))};
    if (rect.rows < 1 || rect.cols < 1) throw ParseError("shape '" + item + "' must have positive sides");
    out.push_back(rect);
  }
  if (out.size() != commas + 1) throw ParseError("bad shape list '" + text + "'");
  return out;
}

Tableau parse_tableau(const std::string& text) {
  std::string s = strip_spaces(text);
  Tableau t;
  if (s.empty()) return t;
  std::stringstream ss(s);
  std::string row;
  size_t slashes = 0;
  for (char c : s) slashes += c == '/';
  while (std::getline(ss, row, '/')) {
    if (!all_digits(row)) throw ParseError("bad tableau row '" + row + "'");
    t.emplace_back();
    for (char c : row) {
      if (c == '0') throw ParseError("tableau entries must be positive");
      t.back().push_back(c - '0');
    }
  }
  if (t.size() != slashes + 1) throw ParseError("bad tableau '" + text + "'");
  return t;
}

std::string format_tableau(const Tableau& t) {
  std::string out;
  for (size_t r = 0; r < t.size(); ++r) {
    if (r) out += '/';
    for (int x : t[r]) out += std::to_string(x);
  }
  return out;
}

Path parse_path(const std::string& text, int n) {
  std::string s = strip_spaces(text);
  Path p{n, {}};
  if (s.empty()) return p;
  size_t pos = 0;
  while (true) {
    size_t next = s.find("(x)", pos);
    std::string f = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!all_digits(f)) throw ParseError("bad path factor '" + f + "'");
    RowFactor row;
    for (char c : f) row.push_back(c - '0');
    p.factors.push_back(row);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  try {
    validate_path(p);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid path: ") + e.what());
  }
  return p;
}

std::string format_path(const Path& p) {
  std::string out;
  for (size_t i = 0; i < p.factors.size(); ++i) {
    if (i) out += "(x)";
    for (int x : p.factors[i]) out += std::to_string(x);
  }
  return out;
}

json rc_to_json(const RiggedConfiguration& rc) {
  json parts = json::array();
  for (const auto& part : rc.parts) {
    json rows = json::array();
    for (const auto& r : part) rows.push_back(json::array({r.length, r.rigging}));
    parts.push_back(rows);
  }
  return json{{"n", rc.n}, {"partitions", parts}};
}

RiggedConfiguration rc_from_json(const json& j) {
  try {
    RiggedConfiguration rc;
    rc.n = j.at("n").get<int>();
    if (rc.n < 1) throw ParseError("rank must be positive");
    const auto& parts = j.at("partitions");
    if (!parts.is_array() || static_cast<int>(parts.size()) != rc.n - 1)
      throw ParseError("expected n-1 rigged partitions");
    for (const auto& part : parts) {
      rc.parts.emplace_back();
      for (const auto& row : part) {
        if (!row.is_array() || row.size() != 2) throw ParseError("rows are [length, rigging] pairs");
        rc.parts.back().push_back({row[0].get<int>(), row[1].get<long>()});
      }
    }
    rc.canonicalize();
    return rc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad rigged configuration JSON: ") + e.what());
  }
}

std::string format_series(const TruncatedSeries& s) {
  std::string out = "offset " + format_rat(s.offset()) + ", step 1/" + std::to_string(s.denom()) + ", through " +
                    format_qpow(s.top()) + ":";
  for (const auto& c : s.coeffs()) out += " " + c.get_str();
  return out;
}

json series_to_json(const TruncatedSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.get_str());
  return json{{"offset", format_rat(s.offset())},
              {"denom", s.denom()},
              {"top", format_rat(s.top())},
              {"coefficients", coeffs}};
}

}  // namespace fermi
