#pragma once

#include "utamp/symbolic/atom.hpp"
#include "utamp/symbolic/domain.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace utamp {

struct ArityMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownSymbol : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotApplicable : std::runtime_error {
  NotApplicable(Atom failed_atom, bool negated_)
      : std::runtime_error("precondition failed: " +
                           (negated_ ? "(not " + failed_atom.str() + ")" : failed_atom.str())),
        atom(std::move(failed_atom)),
        negated(negated_) {}
  Atom atom;
  bool negated;
};

struct GroundAction {
  std::string schema;
  std::vector<std::string> args;
  std::vector<Atom> pre;
  std::vector<Atom> pre_neg;
  std::vector<Atom> add;
  std::vector<Atom> del;

  /// "(schema a b c)"
  std::string str() const;
};

/// Substitutes `args` into `schema`. No applicability or static checks.
GroundAction instantiate(const Domain& d, const ActionSchema& schema,
                         const std::vector<std::string>& args);

/// Instantiates from a plan line such as "(pick b1 t1 front left right ...)".
GroundAction instantiate(const Domain& d, const std::string& schema_name,
                         const std::vector<std::string>& args);

/// Checks declared predicates, arities and symbols of the domain and problem.
void check_consistency(const Domain& d, const Problem& p);

/// All bindings reachable under delete relaxation from p.init whose static
/// preconditions hold. Bindings that differ only in argument order but give
/// identical ground actions are kept once (the lexicographically first).
/// Sorted by str().
std::vector<GroundAction> ground(const Domain& d, const Problem& p);

bool applicable(const SymbolicState& s, const GroundAction& a);
/// Throws NotApplicable naming the first failing precondition.
SymbolicState apply(const SymbolicState& s, const GroundAction& a);

struct ValidationResult {
  bool ok = true;
  /// Index of the failing step; equal to plan size for an unmet goal.
  std::size_t step = 0;
  std::optional<Atom> atom;
  std::string message;
};

ValidationResult validate(const std::vector<GroundAction>& plan, const SymbolicState& s0,
                          const std::vector<Atom>& goal);

/// Grounded task in integer form. Atoms that no action changes are rigid;
/// they are checked once at grounding time and dropped from the compact
/// operators.
struct CompactAction {
  std::vector<int> pre;
  std::vector<int> pre_neg;
  std::vector<int> add;
  std::vector<int> del;
};

/// Schema index and argument symbol ids of a compact operator.
struct OpRef {
  int schema;
  std::vector<int> args;
};

struct GroundedTask {
  AtomTable fluents;
  std::vector<CompactAction> ops;
  std::vector<OpRef> op_refs;
  std::vector<ActionSchema> schemas;
  std::vector<std::string> symbols;
  std::vector<int> init;
  std::vector<int> goal;
  /// A rigid goal atom false in the initial state.
  bool trivially_unsolvable = false;
  SymbolicState initial_state;
  std::vector<Atom> goal_atoms;

  /// Full ground action of ops[op], including rigid atoms.
  GroundAction action(std::size_t op) const;
};

GroundedTask build_task(const Domain& d, const Problem& p);

}  // namespace utamp
