#include "test_support.hpp"
#include "utamp/bench.hpp"
#include "utamp/scene_io.hpp"
#include "utamp/symbolic/pddl.hpp"

#include <doctest.h>
#include <json.hpp>

#include <map>

using namespace utamp;
using namespace utamp::testing;

TEST_CASE("task 1 scenario") {
  const Scenario s = scenario_task1();
  CHECK_NOTHROW(check_scenario(s));
  CHECK(s.goal.size() == 11);
  CHECK(s.kind == TaskKind::object_container);
  const SymbolicState s0 = perceive(s.scene);
  for (int i = 1; i <= 3; ++i) {
    const std::string g = std::to_string(i);
    CHECK_FALSE(s0.count({"oc", {"in", "sgreeng" + g, "bgreen" + g}}));
  }
  const BuiltinDomain d = scenario_domain(s);
  int isgrasp = 0;
  for (const auto& f : d.static_facts) isgrasp += f.predicate == "isgrasp";
  CHECK(isgrasp == 1);
  CHECK(s.bounds.max_plan_length == 60);
  CHECK(s.bounds.reference_plan_length == 46);
}

TEST_CASE("task 2 scenario") {
  const Scenario s = scenario_task2();
  CHECK_NOTHROW(check_scenario(s));
  CHECK(s.goal.size() == 13);
  for (const auto& g : s.goal)
    if (g.predicate == "oc") CHECK(g.args.back() != "bglass3");
  CHECK(std::count(s.goal.begin(), s.goal.end(), Atom{"cleaned", {"bglass3"}}) == 1);
  int parts = 0;
  for (const auto& o : s.scene.objects)
    if (o.id.rfind("table", 0) == 0 && o.id.size() == 6) {
      ++parts;
      CHECK(o.kind == ObjectKind::surface);
    }
  CHECK(parts == 3);
  const SymbolicState s0 = perceive(s.scene);
  for (int i = 1; i <= 3; ++i)
    CHECK(s0.count({"oc", {"on", "table" + std::to_string(i), "bglass" + std::to_string(i)}}));
  CHECK(s0.count({"cleaner", {"dishw"}}));
  CHECK(s0.count({"cooker", {"microw"}}));
  CHECK(s.bounds.max_plan_length == 75);

  // Cooking a cabbage needs it cleaned first.
  const Grounded g = ground_scenario(s);
  for (const auto& a : g.actions)
    if (a.schema == "cook")
      CHECK(std::find(a.pre.begin(), a.pre.end(), Atom{"cleaned", {a.args[0]}}) != a.pre.end());
}

TEST_CASE("scenario construction is deterministic") {
  for (int task : {1, 2}) {
    CHECK(scene_to_json(scenario_by_task(task).scene) == scene_to_json(scenario_by_task(task).scene));
  }
  CHECK_THROWS_AS(scenario_by_task(3), std::invalid_argument);
}

TEST_CASE("initial states are well formed") {
  for (int task : {1, 2}) {
    const Scenario s = scenario_by_task(task);
    const SymbolicState s0 = perceive(s.scene);
    std::map<std::pair<std::string, std::string>, int> oc;
    std::map<std::string, int> base;
    for (const auto& a : s0) {
      if (a.predicate == "oc") ++oc[{a.args[0], a.args[1]}];
      if (a.predicate == "base") ++base[a.args[0]];
    }
    for (const auto& [k, n] : oc) CHECK(n == 1);
    for (const auto& [k, n] : base) CHECK(n == 1);
    CHECK(s0.count({"oc", {"in", "hand", "air"}}));
  }
}

TEST_CASE("scenario checks") {
  Scenario s = scenario_task1();
  s.bounds.max_plan_length = 0;
  CHECK_THROWS_AS(check_scenario(s), std::invalid_argument);
  s = scenario_task1();
  s.goal.push_back({"oc", {"in", "nowhere", "bgreen1"}});
  CHECK_THROWS_AS(check_scenario(s), std::invalid_argument);
}

TEST_CASE("bench runs") {
  CHECK(run_bench({}).runs.empty());

  const BenchReport rep = run_bench({scenario_task1()});
  REQUIRE(rep.runs.size() == 1);
  const ScenarioRun& r = rep.runs[0];
  CHECK(r.error == "");
  CHECK(r.passed());
  CHECK(r.execution.success);
  CHECK(r.plan.size() <= 60);
  CHECK(r.validation.ok);
  const std::string table = format_bench_table(rep);
  CHECK(table.find("task1-green-blocks") != std::string::npos);
  const auto j = nlohmann::json::parse(bench_report_json(rep));
  CHECK(j["scenarios"][0]["passed"] == true);
  CHECK(j["scenarios"][0]["plan_length"] == r.plan.size());

  Scenario broken = scenario_task1();
  broken.goal.push_back({"oc", {"in", "ghost", "bgreen1"}});
  const BenchReport bad = run_bench({broken});
  CHECK_FALSE(bad.runs[0].passed());
  CHECK_FALSE(bad.runs[0].error.empty());

  BenchOptions two;
  two.repetitions = 2;
  const ScenarioRun again = run_scenario(scenario_task1(), two);
  CHECK_FALSE(again.unstable);
  CHECK(export_plan(again.plan) == export_plan(r.plan));
}
