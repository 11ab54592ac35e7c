#include "coxrep/presets.hpp"

#include <array>
#include <utility>

#include "json.hpp"

namespace coxrep {

namespace {

// Kept in sync with the files under presets/ (a unit test compares).
constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kPresets{{
    {"a1", R"({"name":"a1","rank":1,"m":[[1]],"gamma":[],
"notes":"order 2"})"},
    {"a2", R"({"name":"a2","rank":2,"m":[[1,3],[3,1]],"gamma":[],
"notes":"symmetric group on 3 letters, order 6"})"},
    {"a3", R"({"name":"a3","rank":3,"m":[[1,3,2],[3,1,3],[2,3,1]],"gamma":[],
"notes":"symmetric group on 4 letters, order 24"})"},
    {"b2", R"({"name":"b2","rank":2,"m":[[1,4],[4,1]],"gamma":[],
"notes":"dihedral of order 8"})"},
    {"g2", R"({"name":"g2","rank":2,"m":[[1,6],[6,1]],"gamma":[],
"notes":"dihedral of order 12"})"},
    {"iinf", R"({"name":"iinf","rank":2,"m":[[1,0],[0,1]],"gamma":["s0.s1"],
"notes":"infinite dihedral; gamma generates the index-2 translation subgroup"})"},
    {"ra3", R"({"name":"ra3","rank":3,"m":[[1,2,0],[2,1,0],[0,0,1]],"gamma":[],
"notes":"right-angled rank 3: one commuting pair, other orders infinite"})"},
    {"u3", R"({"name":"u3","rank":3,"m":[[1,0,0],[0,1,0],[0,0,1]],"gamma":[],
"notes":"universal rank 3: all off-diagonal orders infinite"})"},
}};

std::string_view canonical_name(std::string_view name) {
  if (name == "itilde1" || name == "i∞") return "iinf";
  return name;
}

}  // namespace

Preset preset_from_json(std::string_view text) {
  Preset p{.name = "", .matrix = CoxeterMatrix::parse(text), .gamma = {}, .notes = ""};
  nlohmann::json doc = nlohmann::json::parse(text);  // already validated above
  if (doc.contains("name") && doc["name"].is_string()) p.name = doc["name"].get<std::string>();
  if (doc.contains("notes") && doc["notes"].is_string()) p.notes = doc["notes"].get<std::string>();
  if (doc.contains("gamma")) {
    if (!doc["gamma"].is_array()) throw ParseError("gamma must be an array of element strings");
    for (const auto& entry : doc["gamma"]) {
      if (!entry.is_string()) throw ParseError("gamma must be an array of element strings");
      Element g = parse_element(entry.get<std::string>(), p.matrix);
      if (to_string(g) != entry.get<std::string>())
        throw ParseError("gamma elements must be given in canonical form");
      p.gamma.push_back(std::move(g));
    }
  }
  return p;
}

Preset load_preset(std::string_view name) {
  std::string_view key = canonical_name(name);
  for (const auto& [preset_name, text] : kPresets) {
    if (preset_name == key) return preset_from_json(text);
  }
  throw ParseError("unknown preset: " + std::string(name));
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  names.reserve(kPresets.size());
  for (const auto& [name, text] : kPresets) names.emplace_back(name);
  return names;
}

}  // namespace coxrep
