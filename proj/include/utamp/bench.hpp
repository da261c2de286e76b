#pragma once

#include "utamp/executor.hpp"
#include "utamp/perception.hpp"
#include "utamp/planner.hpp"
#include "utamp/symbolic/domain.hpp"
#include "utamp/symbolic/grounding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace utamp {

struct ScenarioBounds {
  std::size_t max_plan_length = 0;
  double max_plan_seconds = 0.0;
  /// Published reference figures, reported as context only.
  std::size_t reference_plan_length = 0;
  double reference_seconds = 0.0;
  /// FFRob baseline on the same problem: runtime and success rate.
  double baseline_seconds = 0.0;
  double baseline_success = 0.0;
};

/// Planning input: scene, domain flavour, grasp whitelist and goal.
struct Scenario {
  std::string name;
  Scene scene;
  TaskKind kind = TaskKind::hybrid;
  std::optional<std::vector<GraspConfig>> grasp_whitelist;
  bool kitchen_operators = false;
  std::vector<Atom> goal;
  ScenarioBounds bounds;
};

/// Throws std::invalid_argument for non-positive bounds, a malformed scene or
/// goal atoms over unknown objects.
void check_scenario(const Scenario& s);

/// Green blocks moved from behind the blue blocks to the spots behind the
/// cyan blocks; blue and cyan blocks restored. Blocks sit in container
/// spaces on a 5 cm grid and can only be grasped from the front.
Scenario scenario_task1();

/// Two cabbages cleaned, cooked and served while the blocking turnips are
/// restored; three glasses washed, two of them set on the table.
Scenario scenario_task2();

Scenario scenario_by_task(int task);

BuiltinDomain scenario_domain(const Scenario& s);

/// Objects are every solid and space of the scene; the initial state is the
/// perceived scene plus the domain's static facts.
Problem scenario_problem(const Scenario& s, const BuiltinDomain& d);

struct BenchOptions {
  PlannerConfig planner;
  ExecutorConfig executor;
  int repetitions = 1;
  /// Runs scenarios on separate threads; timings are then not authoritative.
  bool parallel = false;
};

struct ScenarioRun {
  std::string name;
  std::size_t ground_actions = 0;
  std::size_t fluents = 0;
  PlanStatus status = PlanStatus::unsolvable;
  std::vector<GroundAction> plan;
  PlannerStats stats;
  /// Grounding wall time, measured once.
  double ground_seconds = 0.0;
  /// Median search wall time over the repetitions.
  double plan_seconds = 0.0;
  /// Plans or expansion counts differed between repetitions.
  bool unstable = false;
  ValidationResult validation;
  ExecutionReport execution;
  bool within_bounds = false;
  std::string error;
  ScenarioBounds bounds;

  /// Grounding plus search; this is what the time bound applies to.
  double total_seconds() const { return ground_seconds + plan_seconds; }
  bool passed() const;
};

/// perceive, ground, plan (repeated), validate, decompose, simulate. Never
/// throws; failures land in `error`.
ScenarioRun run_scenario(const Scenario& s, const BenchOptions& opts = {});

struct BenchReport {
  std::vector<ScenarioRun> runs;
  bool timings_authoritative = true;
};

BenchReport run_bench(const std::vector<Scenario>& scenarios, const BenchOptions& opts = {});

/// Fixed-width comparison table with the reference and baseline figures.
std::string format_bench_table(const BenchReport& report);
std::string bench_report_json(const BenchReport& report);

}  // namespace utamp
