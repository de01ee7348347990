#include "doctest.h"
#include "sod/replay.hpp"

using namespace sod;

namespace {

const Catalog& cat() {
  static const Catalog c(10);
  return c;
}

std::string scenario_path(const char* name) {
  return std::string(SOD_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("graded value notation round-trips") {
  for (const char* t : {"0", "C", "C^4", "C[-1]", "C + C^2[-3]", "C^3[-2]"})
    CHECK(format_graded(parse_graded(t)) == t);
  CHECK(parse_graded("C[-2]") == GradedSpace::concentrated(2, 1));
  CHECK_THROWS(parse_graded("D[1]"));
}

TEST_CASE("scenario grammar") {
  Scenario s = parse_scenario(R"(
scenario demo
variety P3
start O(-3) ; O(-2) ; O(-1) ; O
step s1 mutate_left 2            # first move
  require ext(O(-3), O(-2)) = C^4
step s2 identify 1 as O(-2)[1]
  require ext(O(-3), O(-2)) = C^4
)");
  CHECK(s.name == "demo");
  REQUIRE(s.steps.size() == 2);
  CHECK(s.steps[0].label == "first move");
  CHECK(s.steps[0].requires_[0].b == "O(-2)");
  CHECK_THROWS_AS(parse_scenario("step x frobnicate 1"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("step x identify 1 as O"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("require axiom m-decomposition"), ScenarioError);
  // JSON is canonical: text -> JSON -> scenario -> JSON is stable
  const std::string j = scenario_to_json(s);
  CHECK(scenario_to_json(scenario_from_json(j)) == j);
}

TEST_CASE("empty scenario passes with an empty transcript") {
  Transcript t = run_scenario(cat(), Scenario{});
  CHECK(t.pass);
  CHECK(t.steps.empty());
}

TEST_CASE("a small replay on P3 catches a wrong identification") {
  // L_{O(-3)} O(-2) = O(-2) - 4 O(-3); it is not O(-2)[1]
  Scenario s = parse_scenario(R"(
scenario p3
variety P3
assume imported-collections
start O(-3) ; O(-2) ; O(-1) ; O
step s1 mutate_left 2
step s2 identify 1 as O(-2)[1]
  require ext(O(-3), O(-2)) = C^4
)");
  Transcript t = run_scenario(cat(), s);
  CHECK_FALSE(t.pass);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0].pass);
  CHECK_FALSE(t.steps[1].pass);
}

TEST_CASE("bundled scenarios") {
  for (const char* f : {"A_blowup_Y.sod", "B_moduli_M.sod", "C_enriques_M.sod",
                        "D_resolution_Xprime.sod"}) {
    CAPTURE(f);
    Transcript t = run_scenario(cat(), load_scenario(scenario_path(f)));
    if (!t.pass) MESSAGE(t.text());
    CHECK(t.pass);
    CHECK(t.final_match);
  }
}

TEST_CASE("scenario B records the O(-h), O(-g) extension") {
  Transcript t = run_scenario(cat(), load_scenario(scenario_path("B_moduli_M.sod")));
  bool seen = false;
  for (const auto& s : t.steps)
    for (const auto& c : s.checks)
      if (c.statement == "Ext(O(-h), O(-g)) = C[-1]" && c.tag == "BBW" &&
          c.status == "PROVED")
        seen = true;
  CHECK(seen);
  CHECK(t.axioms_used == std::vector<std::string>{"block-functor", "m-decomposition",
                                                  "rho-vanishing",
                                                  "spinor-identification"});
  CHECK(t.chi_only.empty());
}

TEST_CASE("exchanging a non-orthogonal pair fails there") {
  Transcript t = run_scenario(cat(), load_scenario(scenario_path("B_negative.sod")));
  CHECK_FALSE(t.pass);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[1].id == "bad");
  CHECK_FALSE(t.steps[1].pass);
}

TEST_CASE("transcripts are deterministic") {
  const Scenario s = load_scenario(scenario_path("A_blowup_Y.sod"));
  CHECK(run_scenario(cat(), s).json() == run_scenario(cat(), s).json());
}

TEST_CASE("swap executed twice restores the state") {
  Scenario s = parse_scenario(R"(
scenario swap
variety X'
start O(-h) ; O ; {O_Q_i(-1,0)}
step s1 swap_orthogonal 2
  require ext(O, O_Q_i(-1,0)) = 0
step s2 swap_orthogonal 2
target O(-h) ; O ; {O_Q_i(-1,0)}
)");
  Transcript t = run_scenario(cat(), s);
  // the second swap needs Ext(O_Q(-1,0), O) = 0, which holds on X'
  CHECK(t.final_match);
  CHECK(t.pass);
}

TEST_CASE("plane identification certificate") {
  Transcript t = check_prop_fs(cat());
  if (!t.pass) MESSAGE(t.text());
  CHECK(t.pass);
  for (const char* r : {"ppsk", "ppsu", "ipf", "ips"}) {
    CAPTURE(r);
    CHECK_FALSE(check_prop_fs(cat(), {r}).pass);
  }
  CHECK_THROWS_AS(check_prop_fs(cat(), {"nope"}), ScenarioError);
}
