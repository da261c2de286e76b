#include "utamp/bench.hpp"

#include "utamp/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <sstream>

namespace utamp {

bool ScenarioRun::passed() const {
  return error.empty() && status == PlanStatus::solved && validation.ok && execution.success &&
         within_bounds && !unstable;
}

ScenarioRun run_scenario(const Scenario& s, const BenchOptions& opts) {
  ScenarioRun run;
  run.name = s.name;
  run.bounds = s.bounds;
  try {
    check_scenario(s);
    if (opts.repetitions < 1) throw std::invalid_argument("repetitions must be positive");
    const BuiltinDomain d = scenario_domain(s);
    const Problem p = scenario_problem(s, d);
    const auto t0 = std::chrono::steady_clock::now();
    const GroundedTask task = build_task(d.domain, p);
    run.ground_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.ground_actions = task.ops.size();
    run.fluents = task.fluents.size();
    log_info(s.name + ": " + std::to_string(run.ground_actions) + " ground actions, " +
             std::to_string(run.fluents) + " fluents");

    std::vector<double> seconds;
    PlanResult first;
    for (int r = 0; r < opts.repetitions; ++r) {
      PlanResult res = plan(task, opts.planner);
      seconds.push_back(res.stats.seconds);
      if (r == 0) {
        first = std::move(res);
      } else if (res.op_ids != first.op_ids || res.stats.expansions != first.stats.expansions) {
        run.unstable = true;
      }
    }
    std::sort(seconds.begin(), seconds.end());
    const std::size_t n = seconds.size();
    run.plan_seconds = n % 2 ? seconds[n / 2] : 0.5 * (seconds[n / 2 - 1] + seconds[n / 2]);
    run.status = first.status;
    run.stats = first.stats;
    run.plan = first.plan;
    if (run.status != PlanStatus::solved) {
      run.error = "planner: " + std::string(to_string(run.status));
      return run;
    }
    run.validation = validate(run.plan, task.initial_state, task.goal_atoms);
    if (!run.validation.ok) {
      run.error = "plan does not validate: " + run.validation.message;
      return run;
    }
    const auto commands = decompose(run.plan, s.scene, opts.executor);
    run.execution = simulate(commands, s.scene, s.goal, opts.executor);
    if (!run.execution.success) {
      std::string why = run.execution.error;
      if (why.empty() && !run.execution.collisions.empty())
        why = std::to_string(run.execution.collisions.size()) + " collisions";
      if (why.empty() && !run.execution.missing_goals.empty())
        why = "goal not perceived: " + run.execution.missing_goals.front().str();
      run.error = "simulation: " + why;
    }
    run.within_bounds = run.plan.size() <= s.bounds.max_plan_length &&
                        run.total_seconds() <= s.bounds.max_plan_seconds;
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

BenchReport run_bench(const std::vector<Scenario>& scenarios, const BenchOptions& opts) {
  BenchReport rep;
  rep.timings_authoritative = !opts.parallel || scenarios.size() <= 1;
  if (opts.parallel) {
    std::vector<std::future<ScenarioRun>> jobs;
    for (const auto& s : scenarios)
      jobs.push_back(std::async(std::launch::async, [&s, &opts] { return run_scenario(s, opts); }));
    for (auto& j : jobs) rep.runs.push_back(j.get());
  } else {
    for (const auto& s : scenarios) rep.runs.push_back(run_scenario(s, opts));
  }
  return rep;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-22s %6s %5s %5s %8s %8s %7s %6s %10s %5s %5s %4s\n",
                "scenario", "length", "ref", "limit", "ground_s", "total_s", "ref_s", "limit",
                "expansions", "sim", "coll", "pass");
  out << line;
  for (const auto& r : report.runs) {
    std::snprintf(line, sizeof line,
                  "%-22s %6zu %5zu %5zu %8.3f %8.3f %7.2f %6.1f %10zu %5s %5zu %4s\n",
                  r.name.c_str(), r.plan.size(), r.bounds.reference_plan_length,
                  r.bounds.max_plan_length, r.ground_seconds, r.total_seconds(),
                  r.bounds.reference_seconds,
                  r.bounds.max_plan_seconds, r.stats.expansions,
                  r.execution.success ? "ok" : "FAIL", r.execution.collisions.size(),
                  r.passed() ? "yes" : "NO");
    out << line;
  }
  for (const auto& r : report.runs) {
    out << r.name << ": FFRob baseline " << fmt("%.0f", r.bounds.baseline_seconds)
        << " s, success rate " << fmt("%.2f", r.bounds.baseline_success) << " (context only)\n";
    if (!r.error.empty()) out << r.name << ": error: " << r.error << "\n";
  }
  if (!report.timings_authoritative) out << "note: parallel run, timings are not authoritative\n";
  return out.str();
}

std::string bench_report_json(const BenchReport& report) {
  using nlohmann::json;
  json j;
  j["format"] = "utamp-bench";
  j["version"] = 1;
  j["timings_authoritative"] = report.timings_authoritative;
  j["scenarios"] = json::array();
  for (const auto& r : report.runs) {
    json plan = json::array();
    for (const auto& a : r.plan) plan.push_back(a.str());
    j["scenarios"].push_back({
        {"name", r.name},
        {"status", std::string(to_string(r.status))},
        {"plan_length", r.plan.size()},
        {"ground_seconds", r.ground_seconds},
        {"search_seconds", r.plan_seconds},
        {"total_seconds", r.total_seconds()},
        {"expansions", r.stats.expansions},
        {"evaluations", r.stats.evaluations},
        {"ground_actions", r.ground_actions},
        {"valid", r.validation.ok},
        {"simulation_success", r.execution.success},
        {"collisions", r.execution.collisions.size()},
        {"within_bounds", r.within_bounds},
        {"passed", r.passed()},
        {"error", r.error},
        {"reference", {{"plan_length", r.bounds.reference_plan_length},
                       {"seconds", r.bounds.reference_seconds}}},
        {"limits", {{"plan_length", r.bounds.max_plan_length},
                    {"seconds", r.bounds.max_plan_seconds}}},
        {"baseline", {{"seconds", r.bounds.baseline_seconds},
                      {"success_rate", r.bounds.baseline_success}}},
        {"plan", plan},
    });
  }
  return j.dump(2) + "\n";
}

}  // namespace utamp
