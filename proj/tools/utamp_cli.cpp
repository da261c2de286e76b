#include "utamp/bench.hpp"
#include "utamp/log.hpp"
#include "utamp/report_io.hpp"
#include "utamp/scene_io.hpp"
#include "utamp/symbolic/pddl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace utamp;

namespace {

enum Exit { kOk = 0, kPlanFailure = 1, kInputError = 2, kSimFailure = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  int task = 0;
  std::string scene;
  std::string goal;
  std::string domain = "hybrid";
  std::vector<std::string> grasps;
};

struct PlannerFlags {
  std::string heuristic = "ff";
  bool no_preferred = false;
  std::size_t max_expansions = 1'000'000;
  double time_limit = 60.0;

  PlannerConfig config() const {
    PlannerConfig cfg;
    const auto h = parse_heuristic(heuristic);
    if (!h) throw InputError("unknown heuristic '" + heuristic + "'");
    cfg.heuristic = *h;
    cfg.use_preferred = !no_preferred;
    cfg.max_expansions = max_expansions;
    cfg.time_limit = time_limit;
    check_config(cfg);
    return cfg;
  }
};

void add_inputs(CLI::App* app, Inputs& in) {
  app->add_option("--task", in.task, "Built-in scenario (1 or 2) instead of --scene/--goal")
      ->check(CLI::Range(1, 2));
  app->add_option("--scene", in.scene, "Scene file (JSON)");
  app->add_option("--goal", in.goal, "Goal file: a PDDL problem whose :goal is used");
  app->add_option("--domain", in.domain, "Domain flavour")
      ->check(CLI::IsMember({"support", "container", "hybrid"}));
  app->add_option("--grasp", in.grasps, "Allowed grasp palm:f1:f2 (repeatable); default all");
}

void add_planner(CLI::App* app, PlannerFlags& pf) {
  app->add_option("--heuristic", pf.heuristic, "Heuristic")
      ->check(CLI::IsMember({"ff", "add", "blind"}));
  app->add_flag("--no-preferred", pf.no_preferred, "Disable the preferred-operator queue");
  app->add_option("--max-expansions", pf.max_expansions, "Expansion limit")
      ->check(CLI::PositiveNumber);
  app->add_option("--time-limit", pf.time_limit, "Planning time limit in seconds")
      ->check(CLI::PositiveNumber);
}

GraspConfig parse_grasp(const std::string& s) {
  std::vector<Part> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(':', start), s.size());
    const auto p = parse_part(s.substr(start, end - start));
    if (!p) throw InputError("bad grasp '" + s + "'");
    parts.push_back(*p);
    start = end + 1;
  }
  if (parts.size() != 3) throw InputError("grasp '" + s + "' needs palm:f1:f2");
  GraspConfig g{parts[0], parts[1], parts[2]};
  if (!g.legal()) throw InputError("grasp '" + s + "' is not legal");
  return g;
}

Scenario load_inputs(const Inputs& in) {
  if (in.task != 0) {
    if (!in.scene.empty() || !in.goal.empty())
      throw InputError("--task cannot be combined with --scene/--goal");
    return scenario_by_task(in.task);
  }
  if (in.scene.empty() || in.goal.empty()) throw InputError("need --task or both --scene and --goal");
  Scenario s;
  s.name = fs::path(in.scene).stem().string();
  try {
    s.scene = load_scene(in.scene);
    s.goal = parse_problem(read_text_file(in.goal)).goal;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const std::map<std::string, TaskKind> kinds = {{"support", TaskKind::object_support},
                                                 {"container", TaskKind::object_container},
                                                 {"hybrid", TaskKind::hybrid}};
  s.kind = kinds.at(in.domain);
  if (!in.grasps.empty()) {
    std::vector<GraspConfig> w;
    for (const auto& g : in.grasps) w.push_back(parse_grasp(g));
    s.grasp_whitelist = w;
  }
  auto kitchen = [](const Atom& a) {
    return a.predicate == "cleaner" || a.predicate == "cooker" || a.predicate == "cleaned" ||
           a.predicate == "cooked";
  };
  s.kitchen_operators = std::any_of(s.goal.begin(), s.goal.end(), kitchen) ||
                        std::any_of(s.scene.facts.begin(), s.scene.facts.end(), kitchen);
  s.bounds = {1'000'000, 1e9, 0, 0.0, 0.0, 0.0};
  try {
    check_scenario(s);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  return s;
}

void print_stats(const PlanResult& r) {
  std::cerr << "status " << to_string(r.status) << ", length " << r.plan.size() << ", expansions "
            << r.stats.expansions << ", evaluations " << r.stats.evaluations << ", initial h "
            << r.stats.initial_h << ", " << r.stats.seconds << " s\n";
}

int cmd_plan(const Inputs& in, const PlannerFlags& pf, const std::string& out) {
  const Scenario s = load_inputs(in);
  const BuiltinDomain d = scenario_domain(s);
  const GroundedTask task = build_task(d.domain, scenario_problem(s, d));
  const PlanResult r = plan(task, pf.config());
  print_stats(r);
  if (r.status != PlanStatus::solved) return kPlanFailure;
  const std::string text = export_plan(r.plan);
  std::cout << text;
  if (!out.empty()) write_text_file(out, text);
  return kOk;
}

int cmd_simulate(const Inputs& in, const PlannerFlags& pf, const std::string& plan_file,
                 const std::string& out, const std::string& trace) {
  const Scenario s = load_inputs(in);
  const BuiltinDomain d = scenario_domain(s);
  const GroundedTask task = build_task(d.domain, scenario_problem(s, d));
  std::vector<GroundAction> steps;
  if (!plan_file.empty()) {
    try {
      steps = instantiate_plan(d.domain, parse_plan(read_text_file(plan_file)));
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  } else {
    const PlanResult r = plan(task, pf.config());
    print_stats(r);
    if (r.status != PlanStatus::solved) return kPlanFailure;
    steps = r.plan;
  }
  const ValidationResult v = validate(steps, task.initial_state, task.goal_atoms);
  if (!v.ok) {
    std::cerr << "plan invalid at step " << v.step << ": " << v.message << "\n";
    return kPlanFailure;
  }
  const ExecutionReport rep = simulate(decompose(steps, s.scene), s.scene, s.goal);
  if (!out.empty()) write_text_file(out, report_to_json(rep));
  if (!trace.empty()) write_text_file(trace, trace_to_json(rep));
  std::cout << "simulation " << (rep.success ? "succeeded" : "failed") << ": " << steps.size()
            << " actions, " << rep.collisions.size() << " collisions, "
            << rep.missing_goals.size() << " unmet goal atoms\n";
  if (!rep.error.empty()) std::cout << "error: " << rep.error << "\n";
  for (const auto& c : rep.collisions)
    std::cout << "collision: command " << c.command << " sample " << c.sample << ": " << c.moving
              << " / " << c.other << "\n";
  for (const auto& m : rep.missing_goals) std::cout << "unmet: " << m.str() << "\n";
  return rep.success ? kOk : kSimFailure;
}

int cmd_bench(int task, const PlannerFlags& pf, int reps, bool parallel, const std::string& out) {
  std::vector<Scenario> scenarios;
  if (task == 0 || task == 1) scenarios.push_back(scenario_task1());
  if (task == 0 || task == 2) scenarios.push_back(scenario_task2());
  BenchOptions opts;
  opts.planner = pf.config();
  opts.repetitions = reps;
  opts.parallel = parallel;
  const BenchReport rep = run_bench(scenarios, opts);
  std::cout << format_bench_table(rep);
  if (!out.empty()) write_text_file(out, bench_report_json(rep));
  int code = kOk;
  for (const auto& r : rep.runs) {
    if (r.passed()) continue;
    if (r.status != PlanStatus::solved || !r.validation.ok) return kPlanFailure;
    code = kSimFailure;
  }
  return code;
}

int cmd_export(const Inputs& in, const std::string& out) {
  const Scenario s = load_inputs(in);
  const BuiltinDomain d = scenario_domain(s);
  const fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());
  write_text_file(dir / "domain.pddl", export_domain(d.domain));
  write_text_file(dir / "problem.pddl", export_problem(scenario_problem(s, d)));
  save_scene(s.scene, dir / "scene.json");
  std::cout << "wrote " << (dir / "domain.pddl").string() << ", " << (dir / "problem.pddl").string()
            << ", " << (dir / "scene.json").string() << "\n";
  return kOk;
}

int cmd_validate(const std::string& domain_file, const std::string& problem_file,
                 const std::string& plan_file) {
  Domain d;
  Problem p;
  std::vector<GroundAction> steps;
  try {
    d = parse_domain(read_text_file(domain_file));
    p = parse_problem(read_text_file(problem_file));
    check_consistency(d, p);
    steps = instantiate_plan(d, parse_plan(read_text_file(plan_file)));
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const SymbolicState s0(p.init.begin(), p.init.end());
  const ValidationResult v = validate(steps, s0, p.goal);
  if (v.ok) {
    std::cout << "valid plan, " << steps.size() << " steps\n";
    return kOk;
  }
  std::cout << "invalid plan at step " << v.step << ": " << v.message << "\n";
  return kPlanFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-centric task and motion planner"};
  app.require_subcommand(1);

  Inputs in;
  PlannerFlags pf;
  std::string out, trace, plan_file, domain_file, problem_file;
  int reps = 1;
  bool parallel = false;

  auto* plan_cmd = app.add_subcommand("plan", "Plan for a scene and goal; prints the plan");
  add_inputs(plan_cmd, in);
  add_planner(plan_cmd, pf);
  plan_cmd->add_option("--out", out, "Also write the plan to this file");

  auto* sim_cmd = app.add_subcommand("simulate", "Plan (or read --plan), decompose and simulate");
  add_inputs(sim_cmd, in);
  add_planner(sim_cmd, pf);
  sim_cmd->add_option("--plan", plan_file, "Plan file to execute instead of planning")
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--out", out, "Execution report (JSON)");
  sim_cmd->add_option("--trace", trace, "Per-sample trace (JSON)");

  auto* bench_cmd = app.add_subcommand("bench", "Run the built-in benchmark scenarios");
  bench_cmd->add_option("--task", in.task, "Only this task (1 or 2)")->check(CLI::Range(1, 2));
  add_planner(bench_cmd, pf);
  bench_cmd->add_option("--reps", reps, "Planning repetitions (median time)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--parallel", parallel, "Run scenarios concurrently");
  bench_cmd->add_option("--out", out, "Machine-readable report (JSON)");

  auto* export_cmd = app.add_subcommand("export-pddl", "Write domain.pddl, problem.pddl, scene.json");
  add_inputs(export_cmd, in);
  export_cmd->add_option("--out", out, "Output directory")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Replay a plan against PDDL files");
  validate_cmd->add_option("--domain-file", domain_file, "PDDL domain")
      ->required()
      ->check(CLI::ExistingFile);
  validate_cmd->add_option("--problem-file", problem_file, "PDDL problem")
      ->required()
      ->check(CLI::ExistingFile);
  validate_cmd->add_option("--plan", plan_file, "Plan file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*plan_cmd) return cmd_plan(in, pf, out);
    if (*sim_cmd) return cmd_simulate(in, pf, plan_file, out, trace);
    if (*bench_cmd) return cmd_bench(in.task, pf, reps, parallel, out);
    if (*export_cmd) return cmd_export(in, out);
    if (*validate_cmd) return cmd_validate(domain_file, problem_file, plan_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
