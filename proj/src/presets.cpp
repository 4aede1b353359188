#include "fermi/presets.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>

#ifndef FERMI_DEFAULT_PRESET_DIR
#define FERMI_DEFAULT_PRESET_DIR "presets"
#endif

namespace fermi {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PresetError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long as_long(const json& j, const char* what) {
  if (!j.is_number_integer()) throw PresetError(std::string(what) + " must be an integer");
  return j.get<long>();
}

int as_sign(const json& j) {
  long s = as_long(j, "sign");
  if (s != 1 && s != -1) throw PresetError("sign must be 1 or -1");
  return static_cast<int>(s);
}

Rat rat_field(const json& j, const char* key, Rat fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return rat_from_json(j.at(key));
  } catch (const ParseError& e) {
    throw PresetError(std::string(key) + ": " + e.what());
  }
}

AffineForm affine(const json& j) {
  AffineForm f;
  if (j.is_number_integer()) {
    f.constant = j.get<long>();
    return f;
  }
  if (j.contains("coeffs"))
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(as_long(c, "affine coefficient"));
  if (j.contains("constant")) f.constant = as_long(j.at("constant"), "affine constant");
  return f;
}

std::vector<SumFactor> sum_factors(const json& j) {
  std::vector<SumFactor> out;
  for (const auto& f : j) {
    SumFactor s;
    s.sign = f.contains("sign") ? as_sign(f.at("sign")) : 1;
    s.exponent = rat_field(f, "exponent", 1);
    s.step = rat_field(f, "step", 1);
    s.length = affine(need(f, "length"));
    out.push_back(s);
  }
  return out;
}

std::vector<PrefactorTerm> prefactor(const json& j) {
  std::vector<PrefactorTerm> out;
  for (const auto& f : j) {
    PrefactorTerm t;
    t.symbol.sign = f.contains("sign") ? as_sign(f.at("sign")) : 1;
    t.symbol.exponent = rat_field(f, "exponent", 1);
    t.symbol.step = rat_field(f, "step", 1);
    if (f.contains("length") && !f.at("length").is_null()) t.symbol.length = as_long(f.at("length"), "length");
    t.power = f.contains("power") ? static_cast<int>(as_long(f.at("power"), "power")) : 1;
    if (t.power == 0) throw PresetError("prefactor power must be nonzero");
    out.push_back(t);
  }
  return out;
}

std::vector<Rat> rat_vector(const json& j, const char* what) {
  if (!j.is_array()) throw PresetError(std::string(what) + " must be an array");
  std::vector<Rat> v;
  for (const auto& x : j) {
    try {
      v.push_back(rat_from_json(x));
    } catch (const ParseError& e) {
      throw PresetError(std::string(what) + ": " + e.what());
    }
  }
  return v;
}

}  // namespace

FermionicSumSpec parse_fermionic(const json& j) {
  FermionicSumSpec s;
  s.dim = static_cast<int>(as_long(need(j, "dim"), "dim"));
  if (s.dim > 0) {
    for (const auto& row : need(j, "quadratic")) s.quadratic.push_back(rat_vector(row, "quadratic"));
    s.linear = rat_vector(need(j, "linear"), "linear");
  }
  s.constant = rat_field(j, "constant", 0);
  if (j.contains("numerator")) s.numerator = sum_factors(j.at("numerator"));
  if (j.contains("denominator")) s.denominator = sum_factors(j.at("denominator"));
  if (j.contains("binomials"))
    for (const auto& b : j.at("binomials")) s.binomials.push_back({affine(need(b, "top")), affine(need(b, "bottom"))});
  if (j.contains("restrictions"))
    for (const auto& r : j.at("restrictions")) {
      Restriction x;
      std::string kind = need(r, "kind").get<std::string>();
      x.form = affine(need(r, "form"));
      if (kind == "ge") {
        x.kind = Restriction::Kind::kGe;
      } else if (kind == "congruence") {
        x.kind = Restriction::Kind::kCongruence;
        x.modulus = as_long(need(r, "modulus"), "modulus");
        x.residue = as_long(need(r, "residue"), "residue");
      } else {
        throw PresetError("unknown restriction kind '" + kind + "'");
      }
      s.restrictions.push_back(x);
    }
  if (j.contains("prefactor")) s.prefactor = prefactor(j.at("prefactor"));
  std::string err = validate_fermionic(s);
  if (!err.empty()) throw PresetError("fermionic side: " + err);
  return s;
}

BosonicSumSpec parse_bosonic(const json& j) {
  BosonicSumSpec s;
  std::string range = j.value("range", "Z");
  if (range != "Z" && range != "N") throw PresetError("bosonic range must be \"Z\" or \"N\"");
  s.full_range = range == "Z";
  s.constant = rat_field(j, "constant", 0);
  for (const auto& b : need(j, "branches")) {
    BosonicBranch br;
    br.sign = b.contains("sign") ? as_sign(b.at("sign")) : 1;
    br.alternating = b.value("alternating", false);
    br.quadratic = rat_field(b, "quadratic", 0);
    br.linear = rat_field(b, "linear", 0);
    br.constant = rat_field(b, "constant", 0);
    if (br.quadratic <= 0) throw PresetError("bosonic branch needs a positive quadratic coefficient");
    if (b.contains("factors"))
      for (const auto& f : b.at("factors")) {
        TermFactor t;
        t.sign = f.contains("sign") ? as_sign(f.at("sign")) : 1;
        t.slope = rat_field(f, "slope", 0);
        t.intercept = rat_field(f, "intercept", 0);
        t.power = f.contains("power") ? static_cast<int>(as_long(f.at("power"), "power")) : 1;
        br.factors.push_back(t);
      }
    s.branches.push_back(br);
  }
  if (j.contains("prefactor")) s.prefactor = prefactor(j.at("prefactor"));
  return s;
}

Preset parse_preset(const json& j) {
  try {
    if (!j.is_object()) throw PresetError("preset must be a JSON object");
    if (as_long(need(j, "format"), "format") != 1) throw PresetError("unsupported preset format");
    Preset p;
    p.name = need(j, "name").get<std::string>();
    if (!j.contains("order")) throw PresetError("preset '" + p.name + "' declares no verification order");
    p.order = as_long(j.at("order"), "order");
    if (p.order < 0) throw PresetError("declared order must be nonnegative");
    p.note = j.value("note", "");
    p.parameters = j.value("parameters", json::object());
    p.offset = rat_field(j, "offset", 0);
    p.fermionic = parse_fermionic(need(j, "fermionic"));
    p.bosonic = parse_bosonic(need(j, "bosonic"));
    p.fermionic.constant += p.offset;
    p.bosonic.constant += p.offset;
    return p;
  } catch (const json::exception& e) {
    throw PresetError(std::string("malformed preset: ") + e.what());
  }
}

const Preset& PresetRegistry::get(const std::string& name) const {
  for (const auto& p : presets)
    if (p.name == name) return p;
  throw UnknownPreset("unknown preset '" + name + "'");
}

PresetRegistry load_registry(const std::string& dir) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PresetError("cannot open " + path);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw PresetError(path + ": " + e.what());
    }
  };
  json reg = read(dir + "/registry.json");
  PresetRegistry r;
  r.dir = dir;
  r.version = need(reg, "version").get<std::string>();
  for (const auto& f : need(reg, "presets")) {
    std::string file = f.get<std::string>();
    try {
      Preset p = parse_preset(read(dir + "/" + file));
      for (const auto& q : r.presets)
        if (q.name == p.name) throw PresetError("duplicate preset name '" + p.name + "'");
      r.presets.push_back(std::move(p));
    } catch (const PresetError& e) {
      throw PresetError(file + ": " + e.what());
    }
  }
  return r;
}

std::string default_preset_dir() {
  const char* env = std::getenv("FERMI_PRESET_DIR");
  if (env && *env) return env;
  return FERMI_DEFAULT_PRESET_DIR;
}

CharacterReport character(const Preset& p, long order) {
  if (order < 0) throw std::invalid_argument("negative order");
  CharacterReport r;
  r.denom = std::lcm(grid_of(p.fermionic), grid_of(p.bosonic));
  r.fermionic = eval_fermionic(p.fermionic, order);
  r.bosonic = eval_bosonic(p.bosonic, order);
  r.comparison = compare_series(r.fermionic, r.bosonic);
  return r;
}

}  // namespace fermi
