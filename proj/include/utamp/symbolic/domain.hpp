#pragma once

#include "utamp/abstraction.hpp"
#include "utamp/symbolic/atom.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace utamp {

struct TypedName {
  std::string name;
  std::string type;
  auto operator<=>(const TypedName&) const = default;
};

/// Predicate occurrence inside a schema. Arguments starting with '?' are
/// variables, everything else is a constant.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool negated = false;

  std::string str() const;
  auto operator<=>(const Literal&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;
  auto operator<=>(const PredicateDecl&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Literal> precondition;
  std::vector<Literal> add_effects;
  std::vector<Literal> del_effects;
  auto operator<=>(const ActionSchema&) const = default;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;
  /// (type, parent type) pairs; roots have parent "object".
  std::vector<TypedName> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;

  const PredicateDecl* predicate(const std::string& name) const;
  const ActionSchema* action(const std::string& name) const;
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
  /// Predicates that no action adds or deletes.
  std::set<std::string> static_predicates() const;

  auto operator<=>(const Domain&) const = default;
};

struct Problem {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Atom> goal;

  auto operator<=>(const Problem&) const = default;
};

/// Sorts the unordered sections (types, constants, predicates, actions,
/// objects, init, goal) by name. Literal order inside actions is kept.
void canonicalize(Domain& d);
void canonicalize(Problem& p);

enum class TaskKind { object_support, object_container, hybrid };

std::string_view to_string(TaskKind k);
std::optional<TaskKind> parse_task_kind(std::string_view s);

/// Planning vocabulary, action schemas and part-level static facts
/// (isgrasp, isopposite, isequal, base2base).
struct BuiltinDomain {
  Domain domain;
  std::vector<Atom> static_facts;
};

/// With a whitelist, only those grasps get isgrasp facts.
BuiltinDomain builtin_domain(TaskKind kind,
                             const std::optional<std::vector<GraspConfig>>& grasp_whitelist = {});

/// Adds the unary status operators `clean` and `cook` and their predicates.
/// Sites are marked in the problem with (cleaner ?d) and (cooker ?m).
void add_kitchen_operators(Domain& d);

inline constexpr const char* kAir = "air";
inline constexpr const char* kHand = "hand";

}  // namespace utamp
