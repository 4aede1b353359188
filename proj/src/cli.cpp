#include "fermi/cli.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fermi/kostka.hpp"
#include "fermi/presets.hpp"
#include "fermi/textio.hpp"

#ifndef FERMI_VERSION
#define FERMI_VERSION "0.0.0"
#endif

namespace fermi::cli {

const std::vector<CommandInfo>& command_registry() {
  static const std::vector<CommandInfo> reg = {
      {"poly", "add or multiply two polynomials", {"poly_add", "poly_mul"}},
      {"qbinom", "Gaussian binomial [m k]", {"q_binomial"}},
      {"series", "truncated series arithmetic", {"series_from_poly", "series_add", "series_mul", "series_invert"}},
      {"pochhammer", "expand (sign q^e; q^step)_length", {"pochhammer"}},
      {"ssyt", "semistandard tableaux of a shape and content", {"enumerate_ssyt", "kostka_number"}},
      {"charge", "charge of a word", {"charge"}},
      {"kostka-foulkes", "K_{lambda mu}(q) by charge", {"kostka_foulkes"}},
      {"paths", "paths of an instance with energies", {"enumerate_paths", "is_highest_weight", "intrinsic_energy"}},
      {"crystal", "crystal operators and local energies on one path", {"e_op", "f_op", "local_energy"}},
      {"rc-list", "rigged configurations with vacancies and bounds",
       {"enumerate_rc", "vacancy", "lower_bound", "cocharge"}},
      {"bijection", "paths to rigged configurations and back", {"path_to_rc", "rc_to_path", "check_statistic"}},
      {"kostka", "Kostka polynomials by rigged configurations and by paths",
       {"fermionic_kostka", "path_kostka", "restricted_kostka", "verify_identity"}},
      {"bailey", "verify Bailey pairs or apply one lemma step", {"verify_bailey_pair", "bailey_step"}},
      {"character", "evaluate and compare both sides of a preset", {"character", "eval_fermionic", "eval_bosonic"}},
      {"compare", "compare two series", {"compare_series"}},
  };
  return reg;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  json data = json::object();
  std::vector<std::string> text;
  int code = kOk;
  void line(std::string s) { text.push_back(std::move(s)); }
};

struct Opts {
  std::string format = "text";
  bool timing = false;
  bool version = false;
  std::string preset_dir;

  std::vector<std::string> pos;
  std::string shapes, weight, path, rc, shape, content, word, lambda, mu;
  int n = 0;
  long order = -1;
  std::string side;
  bool hw_only = false;
  bool check = false;
  std::string op;
  int index = 0;
  std::string sign = "1", exponent = "1", step = "1";
  std::optional<long> length;
  bool verify = false, do_step = false;
  std::string pair = "trivial", base = "0", rho = "inf", sigma = "inf";
  long n_max = 4;
  std::string preset;
};

std::string json_int(const Int& x) { return x.get_str(); }

std::vector<Rectangle> need_shapes(const Opts& o) {
  if (o.shapes.empty()) throw UsageError("--shapes is required");
  return parse_shapes(o.shapes);
}

std::vector<int> row_shapes(const std::vector<Rectangle>& rs) {
  std::vector<int> rows;
  for (const auto& r : rs) {
    if (r.rows != 1) throw Unsupported("unsupported factor shape " + std::to_string(r.rows) + "x" +
                                       std::to_string(r.cols) + " (only single rows are supported here)");
    rows.push_back(r.cols);
  }
  return rows;
}

KostkaInstance row_instance(const Opts& o) {
  KostkaInstance inst{o.n, row_shapes(need_shapes(o)), parse_int_list(o.weight)};
  inst.validate();
  return inst;
}

json poly_json(const IntPolynomial& p) {
  return json{{"text", format_poly(p)}, {"terms", poly_to_json(p)}, {"at_one", json_int(p.at_one())}};
}

json path_json(const Path& p) { return format_path(p); }

// ---------------------------------------------------------------------------

Result cmd_poly(const Opts& o) {
  if (o.pos.size() != 3 || (o.pos[0] != "add" && o.pos[0] != "mul"))
    throw UsageError("usage: poly add|mul A B");
  IntPolynomial a = parse_poly(o.pos[1]), b = parse_poly(o.pos[2]);
  IntPolynomial r = o.pos[0] == "add" ? poly_add(a, b) : poly_mul(a, b);
  Result res;
  res.data = json{{"op", o.pos[0]}, {"polynomial", poly_json(r)}};
  res.line(format_poly(r));
  return res;
}

long parse_long_arg(const std::string& s, const char* what) {
  Rat r = parse_rat(s);
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw UsageError(std::string(what) + " must be an integer");
  return r.get_num().get_si();
}

Result cmd_qbinom(const Opts& o) {
  if (o.pos.size() != 2) throw UsageError("usage: qbinom M K");
  long m = parse_long_arg(o.pos[0], "M"), k = parse_long_arg(o.pos[1], "K");
  if (m < 0) throw UsageError("M must be nonnegative");
  IntPolynomial r = q_binomial(m, k);
  Result res;
  res.data = json{{"m", m}, {"k", k}, {"polynomial", poly_json(r)}};
  res.line(format_poly(r));
  return res;
}

long need_order(const Opts& o) {
  if (o.order < 0) throw UsageError("--order N (N >= 0) is required");
  return o.order;
}

Result cmd_series(const Opts& o) {
  static const std::map<std::string, size_t> arity = {{"from", 1}, {"invert", 1}, {"add", 2}, {"mul", 2}};
  if (o.pos.empty() || !arity.count(o.pos[0]) || o.pos.size() != arity.at(o.pos[0]) + 1)
    throw UsageError("usage: series from|invert P --order N, or series add|mul P Q --order N");
  long order = need_order(o);
  TruncatedSeries a = series_from_poly(parse_poly(o.pos[1]), order);
  TruncatedSeries r;
  if (o.pos[0] == "from") {
    r = a;
  } else if (o.pos[0] == "invert") {
    r = series_invert(a);
  } else {
    TruncatedSeries b = series_from_poly(parse_poly(o.pos[2]), order);
    r = o.pos[0] == "add" ? series_add(a, b) : series_mul(a, b);
  }
  Result res;
  res.data = json{{"op", o.pos[0]}, {"series", series_to_json(r)}};
  res.line(format_series(r));
  return res;
}

Result cmd_pochhammer(const Opts& o) {
  long order = need_order(o);
  PochhammerSpec spec;
  spec.sign = static_cast<int>(parse_long_arg(o.sign, "--sign"));
  if (spec.sign != 1 && spec.sign != -1) throw UsageError("--sign must be 1 or -1");
  spec.exponent = parse_rat(o.exponent);
  spec.step = parse_rat(o.step);
  if (spec.step <= 0) throw UsageError("--step must be positive");
  if (o.length && *o.length < 0) throw UsageError("--length must be nonnegative");
  spec.length = o.length;
  TruncatedSeries r = pochhammer(spec, order);
  std::string symbol = std::string("(") + (spec.sign < 0 ? "-" : "") + format_qpow(spec.exponent) + "; " +
                       (spec.step == 1 ? std::string("q") : format_qpow(spec.step)) + ")_" +
                       (spec.length ? std::to_string(*spec.length) : "inf");
  Result res;
  res.data = json{{"symbol", symbol}, {"series", series_to_json(r)}};
  res.line(symbol);
  res.line(format_series(r));
  return res;
}

Result cmd_ssyt(const Opts& o) {
  Partition shape = parse_int_list(o.shape);
  Composition content = parse_int_list(o.content);
  auto ts = enumerate_ssyt(shape, content);
  Int k = kostka_number(shape, content);
  Result res;
  json list = json::array();
  for (const auto& t : ts) {
    list.push_back(format_tableau(t));
    res.line(format_tableau(t));
  }
  res.data = json{{"shape", shape}, {"content", content}, {"tableaux", list}, {"kostka_number", json_int(k)}};
  res.line("kostka number: " + k.get_str());
  return res;
}

Result cmd_charge(const Opts& o) {
  Word w = parse_int_list(o.word);
  long c = charge(w);
  Result res;
  res.data = json{{"word", w}, {"charge", c}};
  res.line(std::to_string(c));
  return res;
}

Result cmd_kostka_foulkes(const Opts& o) {
  Partition l = parse_int_list(o.lambda), m = parse_int_list(o.mu);
  IntPolynomial k = kostka_foulkes(l, m);
  Result res;
  res.data = json{{"lambda", l}, {"mu", m}, {"polynomial", poly_json(k)}};
  res.line(format_poly(k));
  return res;
}

Result cmd_paths(const Opts& o) {
  KostkaInstance inst = row_instance(o);
  Result res;
  json list = json::array();
  for (const auto& p : enumerate_paths(inst.shapes, inst.n, inst.weight)) {
    bool hw = is_highest_weight(p);
    if (o.hw_only && !hw) continue;
    long e = intrinsic_energy(p);
    list.push_back(json{{"path", path_json(p)}, {"energy", e}, {"highest_weight", hw}});
    res.line(format_path(p) + "  energy " + std::to_string(e) + (hw ? "  highest weight" : ""));
  }
  res.data = json{{"paths", list}, {"count", list.size()}};
  res.line("count: " + std::to_string(list.size()));
  return res;
}

Result cmd_crystal(const Opts& o) {
  if (o.path.empty()) throw UsageError("--path is required");
  Path p = parse_path(o.path, o.n);
  Result res;
  res.data["path"] = path_json(p);
  res.line("path: " + format_path(p));
  if (!o.op.empty()) {
    auto r = o.op == "e" ? e_op(p, o.index) : f_op(p, o.index);
    std::string name = o.op + "_" + std::to_string(o.index);
    res.data["operator"] = name;
    res.data["image"] = r ? json(path_json(*r)) : json(nullptr);
    res.line(name + ": " + (r ? format_path(*r) : "none"));
  }
  json le = json::array();
  std::string line = "local energies:";
  for (size_t i = 0; i + 1 < p.factors.size(); ++i) {
    long e = local_energy(p.factors[i], p.factors[i + 1]);
    le.push_back(e);
    line += " " + std::to_string(e);
  }
  res.data["local_energies"] = le;
  res.line(line);
  return res;
}

Result cmd_rc_list(const Opts& o) {
  if (o.n < 1) throw UsageError("--n must be positive");
  // the unrestricted lower bounds are established for rows only
  MultiplicityArray L = MultiplicityArray::rows(o.n, row_shapes(need_shapes(o)));
  Composition weight = parse_int_list(o.weight);
  Result res;
  json list = json::array();
  int idx = 0;
  for (const auto& rc : enumerate_rc(L, weight)) {
    ++idx;
    Configuration nu = rc.config();
    json parts = json::array();
    std::string line = "#" + std::to_string(idx) + " cocharge " + std::to_string(cocharge(rc)) + " |";
    for (size_t a = 0; a < rc.parts.size(); ++a) {
      json rows = json::array();
      std::string cell;
      for (size_t r = 0; r < rc.parts[a].size(); ++r) {
        const auto& row = rc.parts[a][r];
        long vac = vacancy(nu, L, static_cast<int>(a) + 1, row.length);
        long lb = lower_bound(rc, static_cast<int>(a) + 1, static_cast<int>(r));
        rows.push_back(json{{"length", row.length}, {"rigging", row.rigging}, {"vacancy", vac}, {"lower_bound", lb}});
        cell += " " + std::to_string(row.length) + "[" + std::to_string(lb) + "<=" + std::to_string(row.rigging) +
                "<=" + std::to_string(vac) + "]";
      }
      parts.push_back(rows);
      line += " nu" + std::to_string(a + 1) + ":" + (cell.empty() ? " -" : cell) + " |";
    }
    list.push_back(json{{"partitions", parts}, {"cocharge", cocharge(rc)}});
    line.pop_back();
    line.pop_back();
    res.line(line);
  }
  res.data = json{{"rigged_configurations", list}, {"count", list.size()}};
  res.line("count: " + std::to_string(list.size()));
  return res;
}

Result cmd_bijection(const Opts& o) {
  Result res;
  if (!o.path.empty()) {
    Path p = parse_path(o.path, o.n);
    RiggedConfiguration rc = path_to_rc(p);
    Path back = rc_to_path(rc, path_shapes(p));
    StatisticReport st = check_statistic(p);
    bool ok = back == p && st.shift == 0;
    res.data = json{{"path", path_json(p)},
                    {"rigged_configuration", rc_to_json(rc)},
                    {"inverse", path_json(back)},
                    {"energy", st.energy},
                    {"cocharge", st.cocharge}};
    res.line("path: " + format_path(p));
    res.line("rigged configuration: " + rc_to_json(rc).dump());
    res.line("inverse: " + format_path(back));
    res.line("energy " + std::to_string(st.energy) + ", cocharge " + std::to_string(st.cocharge));
    if (!ok) res.code = kInequality;
    return res;
  }
  KostkaInstance inst = row_instance(o);
  if (!o.rc.empty()) {
    json j;
    try {
      j = json::parse(o.rc);
    } catch (const json::exception& e) {
      throw ParseError(std::string("--rc is not valid JSON: ") + e.what());
    }
    RiggedConfiguration rc = rc_from_json(j);
    Path p = rc_to_path(rc, inst.shapes);
    res.data = json{{"rigged_configuration", rc_to_json(rc)}, {"path", path_json(p)}};
    res.line(format_path(p));
    return res;
  }
  auto paths = enumerate_paths(inst.shapes, inst.n, inst.weight);
  if (o.check) {
    MultiplicityArray L = inst.multiplicities();
    auto rcs = enumerate_rc(L, inst.weight);
    std::set<RiggedConfiguration> image;
    bool round = true, stat = true;
    for (const auto& p : paths) {
      RiggedConfiguration rc = path_to_rc(p);
      image.insert(rc);
      round = round && rc_to_path(rc, inst.shapes) == p;
      stat = stat && check_statistic(p).shift == 0;
    }
    for (const auto& rc : rcs) round = round && path_to_rc(rc_to_path(rc, inst.shapes)) == rc;
    round = round && image == std::set<RiggedConfiguration>(rcs.begin(), rcs.end());
    std::string verdict = std::string("roundtrip: ") + (round ? "ok" : "FAILED") +
                          ", statistic: " + (stat ? "ok" : "FAILED");
    res.data = json{{"paths", paths.size()}, {"rigged_configurations", rcs.size()}, {"roundtrip", round},
                    {"statistic", stat}};
    res.line("paths: " + std::to_string(paths.size()) + ", rigged configurations: " + std::to_string(rcs.size()));
    res.line(verdict);
    if (!round || !stat) res.code = kInequality;
    return res;
  }
  json list = json::array();
  for (const auto& p : paths) {
    RiggedConfiguration rc = path_to_rc(p);
    list.push_back(json{{"path", path_json(p)}, {"rigged_configuration", rc_to_json(rc)}});
    res.line(format_path(p) + " -> " + rc_to_json(rc).dump());
  }
  res.data = json{{"pairs", list}};
  return res;
}

Result cmd_kostka(const Opts& o) {
  KostkaInstance inst = row_instance(o);
  std::string side = o.side.empty() ? "both" : o.side;
  Result res;
  res.data["side"] = side;
  if (side == "fermionic") {
    IntPolynomial f = fermionic_kostka(inst), c = fermionic_kostka_closed_form(inst);
    IntPolynomial nf = apply_normalization(fermionic_path_normalization(), f);
    res.data["fermionic"] = poly_json(f);
    res.data["normalized"] = poly_json(nf);
    res.data["routes_agree"] = f == c;
    res.line("fermionic: " + format_poly(f));
    res.line("normalized: " + format_poly(nf));
    res.line("at q=1: " + f.at_one().get_str());
    if (f != c) {
      res.line("rigged configuration sum and q-binomial sum differ: " + format_poly(c));
      res.code = kInequality;
    }
  } else if (side == "path") {
    IntPolynomial p = path_kostka(inst);
    res.data["path"] = poly_json(p);
    res.line("path: " + format_poly(p));
    res.line("at q=1: " + p.at_one().get_str());
  } else if (side == "restricted") {
    IntPolynomial r = restricted_kostka(inst);
    Partition mu = sorted_partition(inst.shapes);
    IntPolynomial cl = apply_normalization(classical_normalization(mu), r);
    res.data["restricted"] = poly_json(r);
    res.data["classical"] = poly_json(cl);
    res.line("restricted: " + format_poly(r));
    res.line("classical: " + format_poly(cl));
  } else if (side == "both") {
    IdentityReport rep = verify_identity(inst);
    IntPolynomial nf = apply_normalization(rep.normalization, rep.fermionic);
    res.data["fermionic"] = poly_json(rep.fermionic);
    res.data["normalized"] = poly_json(nf);
    res.data["path"] = poly_json(rep.path);
    res.data["normalization"] = json{{"sign", rep.normalization.sign}, {"shift", rep.normalization.shift}};
    res.data["equal"] = rep.equal;
    res.line("fermionic (normalized): " + format_poly(nf));
    res.line("path: " + format_poly(rep.path));
    if (rep.equal) {
      res.line("equal");
    } else {
      res.data["first_difference"] = *rep.first_difference;
      res.line("differ at q^" + std::to_string(*rep.first_difference));
      res.code = kInequality;
    }
  } else {
    throw UsageError("--side must be fermionic, path, both or restricted");
  }
  return res;
}

BaileyParam parse_param(const std::string& s) {
  if (s == "inf") return BaileyParam::inf();
  std::string t = s;
  int sign = 1;
  if (!t.empty() && t[0] == '-') {
    sign = -1;
    t = t.substr(1);
  }
  if (t == "1") return BaileyParam::finite(sign, 0);
  if (t.rfind("q^", 0) == 0) return BaileyParam::finite(sign, parse_rat(t.substr(2)));
  if (t == "q") return BaileyParam::finite(sign, 1);
  throw ParseError("Bailey parameter must be inf, [-]1, [-]q or [-]q^E, got '" + s + "'");
}

std::string param_text(const BaileyParam& p) {
  if (p.infinite) return "inf";
  return std::string(p.sign < 0 ? "-" : "") + format_qpow(p.exponent);
}

json pair_json(const BaileyPair& p, std::vector<std::string>& lines) {
  json alpha = json::array(), beta = json::array();
  for (long n = 0; n <= p.n_max(); ++n) {
    alpha.push_back(series_to_json(p.alpha[n]));
    beta.push_back(series_to_json(p.beta[n]));
    lines.push_back("alpha_" + std::to_string(n) + ": " + format_series(p.alpha[n]));
    lines.push_back("beta_" + std::to_string(n) + ": " + format_series(p.beta[n]));
  }
  return json{{"base", format_rat(p.base)}, {"top", format_rat(p.top)}, {"alpha", alpha}, {"beta", beta}};
}

Result cmd_bailey(const Opts& o) {
  if (o.verify == o.do_step) throw UsageError("exactly one of --verify and --step is required");
  long order = need_order(o);
  if (o.n_max < 0) throw UsageError("--n-max must be nonnegative");
  Rat base = parse_rat(o.base);
  BaileyPair p;
  if (o.pair == "unit") {
    p = unit_pair(base, o.n_max, order);
  } else if (o.pair == "trivial") {
    p = trivial_pair(base, o.n_max, order);
  } else if (o.pair == "rogers") {
    if (base != 0) throw UsageError("the rogers pair is relative to base 0 (a = 1)");
    p = rogers_pair(o.n_max, order);
  } else {
    throw UsageError("--pair must be unit, trivial or rogers");
  }
  Result res;
  res.data["pair"] = o.pair;
  res.line("pair: " + o.pair + ", a = " + format_qpow(base));
  if (o.do_step) {
    BaileyParam rho = parse_param(o.rho), sigma = parse_param(o.sigma);
    p = bailey_step(p, rho, sigma, Rat(order));
    res.data["rho"] = param_text(rho);
    res.data["sigma"] = param_text(sigma);
    res.line("step with rho " + param_text(rho) + ", sigma " + param_text(sigma));
    res.data["result"] = pair_json(p, res.text);
  }
  BaileyCheck chk = verify_bailey_pair(p, Rat(order));
  res.data["holds"] = chk.holds;
  res.data["checked_through"] = format_rat(chk.top);
  if (chk.holds) {
    res.line("bailey pair: ok through " + format_qpow(chk.top));
  } else {
    res.data["failing_n"] = *chk.failing_n;
    res.data["exponent"] = format_rat(*chk.exponent);
    res.line("bailey pair: FAILED at n = " + std::to_string(*chk.failing_n) + ", " + format_qpow(*chk.exponent));
    res.code = kInequality;
  }
  return res;
}

PresetRegistry registry(const Opts& o) {
  return load_registry(o.preset_dir.empty() ? default_preset_dir() : o.preset_dir);
}

void describe_comparison(Result& res, const SeriesComparison& c, const char* left, const char* right) {
  res.data["equal"] = c.equal;
  res.data["compared_through"] = format_rat(c.top);
  if (c.equal) {
    res.line("equal through " + format_qpow(c.top));
  } else {
    json d{{"exponent", format_rat(*c.first_difference)}, {left, json_int(c.left)}, {right, json_int(c.right)}};
    res.data["first_difference"] = d;
    res.line("differ at " + format_qpow(*c.first_difference) + ": " + left + " " + c.left.get_str() + ", " + right +
             " " + c.right.get_str());
    res.code = kInequality;
  }
}

Result cmd_character(const Opts& o) {
  if (o.preset.empty()) throw UsageError("--preset is required");
  PresetRegistry reg = registry(o);
  const Preset& p = reg.get(o.preset);
  long order = o.order < 0 ? p.order : o.order;
  std::string side = o.side.empty() ? "both" : o.side;
  Result res;
  res.data = json{{"preset", p.name}, {"order", order}, {"declared_order", p.order}, {"offset", format_rat(p.offset)}};
  res.line("preset: " + p.name);
  res.line("order: " + std::to_string(order) + " (declared " + std::to_string(p.order) + ")");
  if (side == "fermionic" || side == "bosonic") {
    TruncatedSeries s = side == "fermionic" ? eval_fermionic(p.fermionic, order) : eval_bosonic(p.bosonic, order);
    res.data[side] = series_to_json(s);
    res.line(side + ": " + format_series(s));
    return res;
  }
  if (side != "both") throw UsageError("--side must be fermionic, bosonic or both");
  CharacterReport r = character(p, order);
  res.data["grid"] = r.denom;
  res.data["fermionic"] = series_to_json(r.fermionic);
  res.data["bosonic"] = series_to_json(r.bosonic);
  res.line("grid: " + format_qpow(Rat(1, r.denom)));
  res.line("fermionic: " + format_series(r.fermionic));
  res.line("bosonic: " + format_series(r.bosonic));
  describe_comparison(res, r.comparison, "fermionic", "bosonic");
  return res;
}

Result cmd_compare(const Opts& o) {
  if (o.pos.size() != 2)
    throw UsageError("usage: compare A B --order N (A, B: PRESET.fermionic, PRESET.bosonic or a polynomial)");
  long order = need_order(o);
  std::optional<PresetRegistry> reg;
  auto operand = [&](const std::string& s) -> TruncatedSeries {
    auto dot = s.rfind('.');
    if (dot != std::string::npos) {
      std::string name = s.substr(0, dot), side = s.substr(dot + 1);
      if (side != "fermionic" && side != "bosonic") throw UsageError("operand side must be fermionic or bosonic");
      if (!reg) reg = registry(o);
      const Preset& p = reg->get(name);
      return side == "fermionic" ? eval_fermionic(p.fermionic, order) : eval_bosonic(p.bosonic, order);
    }
    return series_from_poly(parse_poly(s), order);
  };
  TruncatedSeries a = operand(o.pos[0]), b = operand(o.pos[1]);
  Result res;
  res.data = json{{"left", series_to_json(a)}, {"right", series_to_json(b)}};
  res.line("left: " + format_series(a));
  res.line("right: " + format_series(b));
  describe_comparison(res, compare_series(a, b), "left", "right");
  return res;
}

using Handler = Result (*)(const Opts&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"poly", cmd_poly},         {"qbinom", cmd_qbinom},       {"series", cmd_series},
      {"pochhammer", cmd_pochhammer}, {"ssyt", cmd_ssyt},       {"charge", cmd_charge},
      {"kostka-foulkes", cmd_kostka_foulkes}, {"paths", cmd_paths}, {"crystal", cmd_crystal},
      {"rc-list", cmd_rc_list},   {"bijection", cmd_bijection}, {"kostka", cmd_kostka},
      {"bailey", cmd_bailey},     {"character", cmd_character}, {"compare", cmd_compare},
  };
  return h;
}

void instance_flags(CLI::App* s, Opts& o) {
  s->add_option("--shapes", o.shapes, "tensor factors as RxC (rows x columns), comma separated");
  s->add_option("--n", o.n, "rank n of gl_n")->required();
  s->add_option("--weight", o.weight, "weight, comma separated");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Kostka polynomials and q-series identities in exact arithmetic", "fermi"};
  app.require_subcommand(0, 1);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", o.timing, "report wall time (breaks byte-identical output)");
  app.add_flag("--version", o.version, "print library and preset registry versions");
  app.add_option("--preset-dir", o.preset_dir, "preset directory (default: $FERMI_PRESET_DIR or the built-in one)");

  std::map<std::string, CLI::App*> subs;
  for (const auto& c : command_registry()) {
    auto* s = app.add_subcommand(c.name, c.summary);
    s->fallthrough();
    subs[c.name] = s;
  }
  subs["poly"]->add_option("args", o.pos, "add|mul A B");
  subs["qbinom"]->add_option("args", o.pos, "M K");
  subs["series"]->add_option("args", o.pos, "from|invert P, or add|mul P Q");
  subs["series"]->add_option("--order", o.order, "truncation order");
  auto* po = subs["pochhammer"];
  po->add_option("--sign", o.sign, "1 or -1");
  po->add_option("--exponent", o.exponent, "rational exponent e");
  po->add_option("--step", o.step, "rational step");
  po->add_option("--length", o.length, "length (omit for infinity)");
  po->add_option("--order", o.order, "truncation order");
  subs["ssyt"]->add_option("--shape", o.shape, "partition")->required();
  subs["ssyt"]->add_option("--content", o.content, "composition")->required();
  subs["charge"]->add_option("--word", o.word, "word, comma separated letters")->required();
  subs["kostka-foulkes"]->add_option("--lambda", o.lambda, "partition")->required();
  subs["kostka-foulkes"]->add_option("--mu", o.mu, "partition")->required();
  instance_flags(subs["paths"], o);
  subs["paths"]->add_flag("--highest-weight-only", o.hw_only, "keep highest weight paths only");
  auto* cr = subs["crystal"];
  cr->add_option("--n", o.n, "rank")->required();
  cr->add_option("--path", o.path, "path such as 12(x)1")->required();
  cr->add_option("--op", o.op, "e or f")->check(CLI::IsMember({"e", "f"}));
  cr->add_option("--i", o.index, "operator index 1..n-1");
  instance_flags(subs["rc-list"], o);
  auto* bj = subs["bijection"];
  instance_flags(bj, o);
  bj->add_option("--path", o.path, "map one path and back");
  bj->add_option("--rc", o.rc, "map one rigged configuration (JSON) to a path");
  bj->add_flag("--check", o.check, "round trips and statistic over the instance");
  instance_flags(subs["kostka"], o);
  subs["kostka"]->add_option("--side", o.side, "fermionic|path|both|restricted");
  auto* ba = subs["bailey"];
  ba->add_flag("--verify", o.verify, "verify a seed pair");
  ba->add_flag("--step", o.do_step, "apply one lemma step and verify the result");
  ba->add_option("--pair", o.pair, "unit|trivial|rogers");
  ba->add_option("--base", o.base, "a = q^base");
  ba->add_option("--n-max", o.n_max, "largest index n");
  ba->add_option("--rho", o.rho, "inf, [-]1, [-]q or [-]q^E");
  ba->add_option("--sigma", o.sigma, "inf, [-]1, [-]q or [-]q^E");
  ba->add_option("--order", o.order, "truncation order");
  auto* ch = subs["character"];
  ch->add_option("--preset", o.preset, "preset name")->required();
  ch->add_option("--order", o.order, "order (default: declared order)");
  ch->add_option("--side", o.side, "fermionic|bosonic|both");
  subs["compare"]->add_option("args", o.pos, "A B");
  subs["compare"]->add_option("--order", o.order, "truncation order");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (o.version) {
    out << "fermi " << FERMI_VERSION << "\n";
    try {
      out << "preset registry " << registry(o).version << "\n";
    } catch (const std::exception&) {
      out << "preset registry unavailable\n";
    }
    return kOk;
  }
  auto parsed = app.get_subcommands();
  if (parsed.empty()) {
    err << "error: a subcommand is required\n" << app.help();
    return kUsage;
  }
  const std::string name = parsed.front()->get_name();

  Result res;
  auto t0 = std::chrono::steady_clock::now();
  try {
    res = handlers().at(name)(o);
  } catch (const UnknownPreset& e) {
    err << "error: " << e.what() << "\n";
    return kUnknownPreset;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    // the bijection rejects non-row factors with this message
    if (std::string(e.what()).find("unsupported factor shape") != std::string::npos) {
      err << "error: " << e.what() << "\n";
      return kUnsupported;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (o.format == "json") {
    json env;
    env["command"] = name;
    env["input"] = args;
    env["result"] = res.data;
    env["exit_code"] = res.code;
    env["timing"] = o.timing ? json{{"ms", ms}} : json(nullptr);
    env["version"] = FERMI_VERSION;
    out << env.dump(2) << "\n";
  } else {
    for (const auto& l : res.text) out << l << "\n";
    if (o.timing) err << "time: " << ms << " ms\n";
  }
  return res.code;
}

}  // namespace fermi::cli
