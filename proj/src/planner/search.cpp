#include "utamp/log.hpp"
#include "utamp/planner.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace utamp {

std::string_view to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::solved: return "solved";
    case PlanStatus::unsolvable: return "unsolvable";
    case PlanStatus::resource_limit: return "resource_limit";
  }
  return "?";
}

void check_config(const PlannerConfig& cfg) {
  if (cfg.max_expansions == 0) throw std::invalid_argument("max expansions must be positive");
  if (!(cfg.time_limit > 0)) throw std::invalid_argument("time limit must be positive");
  if (cfg.boost < 0) throw std::invalid_argument("queue boost must be non-negative");
}

namespace {

struct Node {
  PackedState state;
  int parent;
  int op;
};

// Open-list entry: successor of `parent` via `op`, keyed by the parent's h.
struct Entry {
  int h;
  std::uint64_t order;
  int parent;
  int op;
  bool operator>(const Entry& o) const { return h != o.h ? h > o.h : order > o.order; }
};

using Queue = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

}  // namespace

PlanResult plan(const GroundedTask& task, const PlannerConfig& cfg) {
  check_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  PlanResult result;
  RelaxationHeuristic heuristic(task);
  std::vector<Node> nodes;
  std::unordered_set<PackedState, PackedStateHash> closed;

  auto finish = [&](PlanStatus status, int node) {
    result.status = status;
    if (status == PlanStatus::solved) {
      for (int n = node; nodes[static_cast<std::size_t>(n)].parent >= 0;
           n = nodes[static_cast<std::size_t>(n)].parent)
        result.op_ids.push_back(nodes[static_cast<std::size_t>(n)].op);
      std::reverse(result.op_ids.begin(), result.op_ids.end());
      for (int op : result.op_ids) result.plan.push_back(task.action(static_cast<std::size_t>(op)));
    }
    result.stats.seconds = elapsed();
    log_debug("search " + std::string(to_string(status)) + ": " +
              std::to_string(result.stats.expansions) + " expansions, " +
              std::to_string(result.stats.evaluations) + " evaluations");
    return result;
  };

  Queue queues[2];  // 0: all successors, 1: preferred successors
  long long priority[2] = {0, 0};
  std::uint64_t order = 0;
  int best_h = kInfiniteH;

  auto expand = [&](int node_id, const HeuristicValue& hv) {
    ++result.stats.expansions;
    const PackedState& s = nodes[static_cast<std::size_t>(node_id)].state;
    std::size_t pref_i = 0;
    for (std::size_t op = 0; op < task.ops.size(); ++op) {
      if (!op_applicable(task.ops[op], s)) continue;
      const Entry e{hv.h, order++, node_id, static_cast<int>(op)};
      queues[0].push(e);
      ++result.stats.generated;
      while (pref_i < hv.preferred.size() && hv.preferred[pref_i] < static_cast<int>(op)) ++pref_i;
      if (cfg.use_preferred && pref_i < hv.preferred.size() &&
          hv.preferred[pref_i] == static_cast<int>(op))
        queues[1].push(e);
    }
  };

  // Evaluates a new node; returns false for dead ends.
  auto evaluate = [&](int node_id, HeuristicValue& hv) {
    ++result.stats.evaluations;
    hv = heuristic.evaluate(nodes[static_cast<std::size_t>(node_id)].state, cfg.heuristic);
    if (hv.h == kInfiniteH) {
      ++result.stats.dead_ends;
      return false;
    }
    if (hv.h < best_h) {
      best_h = hv.h;
      // Progress rewards the preferred queue.
      if (cfg.use_preferred) priority[1] -= cfg.boost;
    }
    return true;
  };

  nodes.push_back({pack(task, task.initial_state), -1, -1});
  closed.insert(nodes[0].state);
  HeuristicValue hv;
  const bool alive = evaluate(0, hv);
  result.stats.initial_h = hv.h;
  if (goal_reached(task, nodes[0].state)) return finish(PlanStatus::solved, 0);
  if (!alive) return finish(PlanStatus::unsolvable, -1);
  expand(0, hv);

  std::size_t pops = 0;
  while (!queues[0].empty() || !queues[1].empty()) {
    if (result.stats.expansions >= cfg.max_expansions) return finish(PlanStatus::resource_limit, -1);
    if ((++pops & 255u) == 0 && elapsed() > cfg.time_limit)
      return finish(PlanStatus::resource_limit, -1);

    int q = 0;
    if (queues[0].empty() || (!queues[1].empty() && priority[1] < priority[0])) q = 1;
    ++priority[q];
    const Entry e = queues[q].top();
    queues[q].pop();

    PackedState succ = op_apply(task.ops[static_cast<std::size_t>(e.op)],
                                nodes[static_cast<std::size_t>(e.parent)].state);
    if (!closed.insert(succ).second) continue;
    nodes.push_back({std::move(succ), e.parent, e.op});
    const int id = static_cast<int>(nodes.size()) - 1;
    if (goal_reached(task, nodes.back().state)) return finish(PlanStatus::solved, id);
    if (!evaluate(id, hv)) continue;
    expand(id, hv);
  }
  return finish(PlanStatus::unsolvable, -1);
}

}  // namespace utamp
