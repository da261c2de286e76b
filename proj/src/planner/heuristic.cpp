#include "utamp/planner.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace utamp {

std::string_view to_string(HeuristicKind k) {
  switch (k) {
    case HeuristicKind::relaxed_plan: return "ff";
    case HeuristicKind::additive: return "add";
    case HeuristicKind::blind: return "blind";
  }
  return "?";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view s) {
  for (auto k : {HeuristicKind::relaxed_plan, HeuristicKind::additive, HeuristicKind::blind})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::size_t PackedStateHash::operator()(const PackedState& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : s.words()) h = (h ^ w) * 0xff51afd7ed558ccdull + (h >> 29);
  return h;
}

PackedState pack(const GroundedTask& task, const SymbolicState& s) {
  PackedState out(task.fluents.size());
  for (const auto& a : s) {
    const int id = task.fluents.find(a);
    if (id >= 0) out.set(id);
  }
  return out;
}

SymbolicState unpack(const GroundedTask& task, const PackedState& s) {
  // Rigid atoms never change, so they come from the initial state.
  SymbolicState out;
  for (const auto& a : task.initial_state)
    if (task.fluents.find(a) < 0) out.insert(a);
  for (std::size_t i = 0; i < task.fluents.size(); ++i)
    if (s.test(static_cast<int>(i))) out.insert(task.fluents.atom(static_cast<int>(i)));
  return out;
}

bool op_applicable(const CompactAction& op, const PackedState& s) {
  for (int p : op.pre)
    if (!s.test(p)) return false;
  for (int p : op.pre_neg)
    if (s.test(p)) return false;
  return true;
}

PackedState op_apply(const CompactAction& op, const PackedState& s) {
  PackedState out = s;
  for (int d : op.del) out.reset(d);
  for (int a : op.add) out.set(a);
  return out;
}

bool goal_reached(const GroundedTask& task, const PackedState& s) {
  if (task.trivially_unsolvable) return false;
  for (int g : task.goal)
    if (!s.test(g)) return false;
  return true;
}

RelaxationHeuristic::RelaxationHeuristic(const GroundedTask& task)
    : task_(task),
      achievers_(task.fluents.size()),
      consumers_(task.fluents.size()),
      fact_level_(task.fluents.size()),
      op_level_(task.ops.size()),
      unsatisfied_(task.ops.size()),
      supporter_(task.fluents.size()),
      in_plan_(task.ops.size()) {
  for (std::size_t i = 0; i < task.ops.size(); ++i) {
    const auto& op = task.ops[i];
    for (int a : op.add) achievers_[static_cast<std::size_t>(a)].push_back(static_cast<int>(i));
    for (int p : op.pre) consumers_[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
    if (op.pre.empty()) no_pre_ops_.push_back(static_cast<int>(i));
  }
}

HeuristicValue RelaxationHeuristic::evaluate(const PackedState& s, HeuristicKind kind) {
  if (task_.trivially_unsolvable) return {kInfiniteH, {}};
  if (goal_reached(task_, s)) return {0, {}};
  switch (kind) {
    case HeuristicKind::relaxed_plan: return relaxed_plan(s);
    case HeuristicKind::additive: return additive(s);
    case HeuristicKind::blind: return {0, {}};
  }
  return {kInfiniteH, {}};
}

void RelaxationHeuristic::collect_preferred(const PackedState& s, HeuristicValue& v) const {
  for (int op : plan_ops_)
    if (op_applicable(task_.ops[static_cast<std::size_t>(op)], s)) v.preferred.push_back(op);
  std::sort(v.preferred.begin(), v.preferred.end());
}

HeuristicValue RelaxationHeuristic::relaxed_plan(const PackedState& s) {
  constexpr int kUnreached = -1;
  std::fill(fact_level_.begin(), fact_level_.end(), kUnreached);
  std::fill(op_level_.begin(), op_level_.end(), kUnreached);
  for (std::size_t i = 0; i < task_.ops.size(); ++i)
    unsatisfied_[i] = static_cast<int>(task_.ops[i].pre.size());

  // Layered relaxed planning graph.
  std::vector<int> frontier;
  for (std::size_t f = 0; f < fact_level_.size(); ++f)
    if (s.test(static_cast<int>(f))) {
      fact_level_[f] = 0;
      frontier.push_back(static_cast<int>(f));
    }
  std::vector<int> layer_ops = no_pre_ops_;
  auto goals_reached = [&] {
    for (int g : task_.goal)
      if (fact_level_[static_cast<std::size_t>(g)] == kUnreached) return false;
    return true;
  };
  int level = 0;
  while (!goals_reached()) {
    for (int f : frontier)
      for (int op : consumers_[static_cast<std::size_t>(f)])
        if (--unsatisfied_[static_cast<std::size_t>(op)] == 0) layer_ops.push_back(op);
    if (layer_ops.empty()) return {kInfiniteH, {}};
    frontier.clear();
    for (int op : layer_ops) {
      op_level_[static_cast<std::size_t>(op)] = level;
      for (int a : task_.ops[static_cast<std::size_t>(op)].add)
        if (fact_level_[static_cast<std::size_t>(a)] == kUnreached) {
          fact_level_[static_cast<std::size_t>(a)] = level + 1;
          frontier.push_back(a);
        }
    }
    layer_ops.clear();
    ++level;
  }

  // Backward extraction; achiever = smallest op index one layer below.
  std::vector<std::vector<int>> goals_at(static_cast<std::size_t>(level) + 1);
  std::vector<char> marked(fact_level_.size(), 0);
  for (int g : task_.goal) {
    if (marked[static_cast<std::size_t>(g)]) continue;
    marked[static_cast<std::size_t>(g)] = 1;
    goals_at[static_cast<std::size_t>(fact_level_[static_cast<std::size_t>(g)])].push_back(g);
  }
  std::fill(in_plan_.begin(), in_plan_.end(), 0);
  plan_ops_.clear();
  for (int l = level; l > 0; --l) {
    for (int g : goals_at[static_cast<std::size_t>(l)]) {
      int best = -1;
      for (int op : achievers_[static_cast<std::size_t>(g)])
        if (op_level_[static_cast<std::size_t>(op)] == l - 1) {
          best = op;
          break;
        }
      if (in_plan_[static_cast<std::size_t>(best)]) continue;
      in_plan_[static_cast<std::size_t>(best)] = 1;
      plan_ops_.push_back(best);
      for (int p : task_.ops[static_cast<std::size_t>(best)].pre) {
        if (marked[static_cast<std::size_t>(p)]) continue;
        marked[static_cast<std::size_t>(p)] = 1;
        goals_at[static_cast<std::size_t>(fact_level_[static_cast<std::size_t>(p)])].push_back(p);
      }
    }
  }
  HeuristicValue v{static_cast<int>(plan_ops_.size()), {}};
  collect_preferred(s, v);
  return v;
}

HeuristicValue RelaxationHeuristic::additive(const PackedState& s) {
  // fact_level_ holds h_add costs here, op_level_ the op cost.
  constexpr int kInf = kInfiniteH;
  std::fill(fact_level_.begin(), fact_level_.end(), kInf);
  std::fill(supporter_.begin(), supporter_.end(), -1);
  for (std::size_t i = 0; i < task_.ops.size(); ++i) {
    unsatisfied_[i] = static_cast<int>(task_.ops[i].pre.size());
    op_level_[i] = 1;
  }
  using Entry = std::pair<int, int>;  // (cost, fact)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t f = 0; f < fact_level_.size(); ++f)
    if (s.test(static_cast<int>(f))) {
      fact_level_[f] = 0;
      queue.push({0, static_cast<int>(f)});
    }
  auto relax = [&](int op) {
    const int cost = op_level_[static_cast<std::size_t>(op)];
    for (int a : task_.ops[static_cast<std::size_t>(op)].add) {
      auto& c = fact_level_[static_cast<std::size_t>(a)];
      if (cost < c) {
        c = cost;
        supporter_[static_cast<std::size_t>(a)] = op;
        queue.push({cost, a});
      }
    }
  };
  for (int op : no_pre_ops_) relax(op);
  while (!queue.empty()) {
    auto [cost, f] = queue.top();
    queue.pop();
    if (cost > fact_level_[static_cast<std::size_t>(f)]) continue;
    for (int op : consumers_[static_cast<std::size_t>(f)]) {
      auto& oc = op_level_[static_cast<std::size_t>(op)];
      oc = oc >= kInf - cost ? kInf : oc + cost;
      if (--unsatisfied_[static_cast<std::size_t>(op)] == 0) relax(op);
    }
  }
  long long h = 0;
  for (int g : task_.goal) {
    const int c = fact_level_[static_cast<std::size_t>(g)];
    if (c == kInf) return {kInfiniteH, {}};
    h += c;
  }

  // Best-supporter relaxed plan for preferred operators.
  std::fill(in_plan_.begin(), in_plan_.end(), 0);
  plan_ops_.clear();
  std::vector<int> stack(task_.goal.begin(), task_.goal.end());
  std::vector<char> seen(fact_level_.size(), 0);
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(f)] || fact_level_[static_cast<std::size_t>(f)] == 0)
      continue;
    seen[static_cast<std::size_t>(f)] = 1;
    const int op = supporter_[static_cast<std::size_t>(f)];
    if (in_plan_[static_cast<std::size_t>(op)]) continue;
    in_plan_[static_cast<std::size_t>(op)] = 1;
    plan_ops_.push_back(op);
    for (int p : task_.ops[static_cast<std::size_t>(op)].pre) stack.push_back(p);
  }
  HeuristicValue v{static_cast<int>(std::min<long long>(h, kInfiniteH - 1)), {}};
  collect_preferred(s, v);
  return v;
}

HeuristicValue relaxed_plan_heuristic(const GroundedTask& task, const SymbolicState& s,
                                      HeuristicKind kind) {
  RelaxationHeuristic h(task);
  return h.evaluate(pack(task, s), kind);
}

}  // namespace utamp
