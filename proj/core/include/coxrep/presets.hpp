#pragma once

// Curated group configurations (and their Gamma data, where a simple
// description exists), shared by the tests and the CLI.

#include <string>
#include <string_view>
#include <vector>

#include "coxrep/coxeter.hpp"

namespace coxrep {

struct Preset {
  std::string name;
  CoxeterMatrix matrix;
  std::vector<Element> gamma;  // generators of the configured subgroup
  std::string notes;
};

// Built-in names: a1, a2, a3, b2, g2, iinf, ra3, u3; the infinite
// dihedral preset also answers to "itilde1" and "i∞".
Preset load_preset(std::string_view name);
std::vector<std::string> preset_names();

// Same JSON schema as user configuration files, plus the optional
// keys "name", "gamma" (element strings, already canonical) and
// "notes".
Preset preset_from_json(std::string_view text);

}  // namespace coxrep
