#pragma once

#include "utamp/symbolic/grounding.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace utamp {

enum class HeuristicKind { relaxed_plan, additive, blind };

std::string_view to_string(HeuristicKind k);
std::optional<HeuristicKind> parse_heuristic(std::string_view s);

inline constexpr int kInfiniteH = std::numeric_limits<int>::max();

/// Packed fluent valuation; bit i is fluent atom i of the task.
class PackedState {
 public:
  PackedState() = default;
  explicit PackedState(std::size_t n_atoms) : words_((n_atoms + 63) / 64, 0) {}

  bool test(int i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (static_cast<unsigned>(i) & 63u)) & 1u;
  }
  void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= bit(i); }
  void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~bit(i); }

  const std::vector<std::uint64_t>& words() const { return words_; }
  bool operator==(const PackedState&) const = default;

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (static_cast<unsigned>(i) & 63u); }
  std::vector<std::uint64_t> words_;
};

struct PackedStateHash {
  std::size_t operator()(const PackedState& s) const noexcept;
};

PackedState pack(const GroundedTask& task, const SymbolicState& s);
SymbolicState unpack(const GroundedTask& task, const PackedState& s);
bool op_applicable(const CompactAction& op, const PackedState& s);
PackedState op_apply(const CompactAction& op, const PackedState& s);
bool goal_reached(const GroundedTask& task, const PackedState& s);

struct HeuristicValue {
  int h = 0;
  /// Indices into task.ops, ascending.
  std::vector<int> preferred;
};

/// Delete-relaxation heuristics over a grounded task. Reusable scratch space;
/// one instance per thread.
class RelaxationHeuristic {
 public:
  explicit RelaxationHeuristic(const GroundedTask& task);
  HeuristicValue evaluate(const PackedState& s, HeuristicKind kind);

 private:
  HeuristicValue relaxed_plan(const PackedState& s);
  HeuristicValue additive(const PackedState& s);
  void collect_preferred(const PackedState& s, HeuristicValue& v) const;

  const GroundedTask& task_;
  std::vector<std::vector<int>> achievers_;
  std::vector<std::vector<int>> consumers_;
  std::vector<int> no_pre_ops_;
  std::vector<int> fact_level_;
  std::vector<int> op_level_;
  std::vector<int> unsatisfied_;
  std::vector<int> supporter_;
  std::vector<char> in_plan_;
  std::vector<int> plan_ops_;
};

/// FF-style value and preferred operators for a symbolic state.
HeuristicValue relaxed_plan_heuristic(const GroundedTask& task, const SymbolicState& s,
                                      HeuristicKind kind = HeuristicKind::relaxed_plan);

struct PlannerConfig {
  HeuristicKind heuristic = HeuristicKind::relaxed_plan;
  bool use_preferred = true;
  int boost = 1000;
  std::size_t max_expansions = 1'000'000;
  double time_limit = 60.0;
};

/// Throws std::invalid_argument on non-positive limits.
void check_config(const PlannerConfig& cfg);

enum class PlanStatus { solved, unsolvable, resource_limit };

std::string_view to_string(PlanStatus s);

struct PlannerStats {
  std::size_t expansions = 0;
  std::size_t evaluations = 0;
  std::size_t generated = 0;
  std::size_t dead_ends = 0;
  int initial_h = 0;
  double seconds = 0.0;
};

struct PlanResult {
  PlanStatus status = PlanStatus::unsolvable;
  std::vector<GroundAction> plan;
  std::vector<int> op_ids;
  PlannerStats stats;
};

/// Lazy greedy best-first search with an all-successors queue and a
/// preferred-successors queue. Deterministic for a fixed config.
PlanResult plan(const GroundedTask& task, const PlannerConfig& cfg = {});

}  // namespace utamp
