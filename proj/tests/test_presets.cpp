#include <fstream>
#include <sstream>

#include "coxrep/presets.hpp"
#include "coxrep/reflection_sets.hpp"
#include "doctest.h"

using namespace coxrep;

TEST_CASE("preset lookup") {
  Preset a2 = load_preset("a2");
  CHECK(a2.matrix.rank() == 2);
  CHECK(a2.matrix.order(0, 1) == 3);

  Preset iinf = load_preset("iinf");
  CHECK(iinf.matrix.order(0, 1) == kInfiniteOrder);
  REQUIRE(iinf.gamma.size() == 1);
  CHECK(to_string(iinf.gamma[0]) == "s0.s1");
  CHECK(load_preset("itilde1").matrix == iinf.matrix);
  CHECK(load_preset("i∞").matrix == iinf.matrix);

  Preset a3 = load_preset("a3");
  CHECK(a3.matrix.order(0, 1) == 3);
  CHECK(a3.matrix.order(1, 2) == 3);
  CHECK(a3.matrix.order(0, 2) == 2);

  CHECK_THROWS_AS(load_preset("nope"), ParseError);
  CHECK(preset_names().size() == 8);
}

TEST_CASE("finite presets saturate at the known order") {
  struct Expected {
    const char* name;
    std::size_t order;
  };
  for (Expected e : {Expected{"a1", 2}, Expected{"a2", 6}, Expected{"b2", 8},
                     Expected{"g2", 12}, Expected{"a3", 24}}) {
    CoxeterMatrix m = load_preset(e.name).matrix;
    Ball ball = Ball::enumerate(m, 16);
    CHECK(ball.size() == e.order);
  }
}

TEST_CASE("infinite dihedral orbit structure at every radius") {
  Preset iinf = load_preset("iinf");
  for (int radius : {3, 5, 7, 9}) {
    ReflectionTable table =
        ReflectionTable::enumerate(Ball::enumerate(iinf.matrix, radius));
    OrbitPartition orbits = orbit_partition(table, iinf.gamma, iinf.matrix);
    CHECK(orbits.count() == 2);
    // Conjugates of s never meet conjugates of t.
    Element s = reduce({0}, iinf.matrix);
    Element t = reduce({1}, iinf.matrix);
    CHECK(orbits.class_of[*table.find(s)] != orbits.class_of[*table.find(t)]);
  }
}

TEST_CASE("preset files mirror the built-ins") {
  for (const std::string& name : preset_names()) {
    std::string file = std::string(COXREP_PRESET_DIR) + "/" +
                       (name == "iinf" ? std::string("itilde1") : name) + ".json";
    std::ifstream in(file);
    REQUIRE_MESSAGE(in.good(), file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    Preset from_file = preset_from_json(buffer.str());
    Preset built_in = load_preset(name);
    CHECK(from_file.matrix == built_in.matrix);
    CHECK(from_file.gamma == built_in.gamma);
  }
}

TEST_CASE("gamma must be canonical") {
  CHECK_THROWS_AS(preset_from_json(R"({"rank":2,"m":[[1,0],[0,1]],"gamma":["s0.s0"]})"),
                  ParseError);
  CHECK_THROWS_AS(preset_from_json(R"({"rank":2,"m":[[1,0],[0,1]],"gamma":[3]})"), ParseError);
}
