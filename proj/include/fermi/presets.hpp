#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fermi/qseries.hpp"
#include "fermi/textio.hpp"

namespace fermi {

struct PresetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownPreset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Preset {
  std::string name;
  std::string note;
  long order = 0;  // declared verification order
  json parameters;
  Rat offset = 0;
  FermionicSumSpec fermionic;
  BosonicSumSpec bosonic;
};

// `format` must be 1; a preset without `order` is refused.
Preset parse_preset(const json& j);
FermionicSumSpec parse_fermionic(const json& j);
BosonicSumSpec parse_bosonic(const json& j);

struct PresetRegistry {
  std::string version;
  std::string dir;
  std::vector<Preset> presets;
  const Preset& get(const std::string& name) const;  // throws UnknownPreset
};

PresetRegistry load_registry(const std::string& dir);

// FERMI_PRESET_DIR if set, else the directory compiled in
std::string default_preset_dir();

struct CharacterReport {
  TruncatedSeries fermionic, bosonic;
  SeriesComparison comparison;
  long denom = 1;  // grid q^{1/denom} used by the evaluators
};

CharacterReport character(const Preset& p, long order);

}  // namespace fermi
