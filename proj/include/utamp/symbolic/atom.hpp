#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace utamp {

/// A ground predicate instance, e.g. (oc on table1 bglass1).
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  Atom() = default;
  Atom(std::string pred, std::vector<std::string> arguments)
      : predicate(std::move(pred)), args(std::move(arguments)) {}
  Atom(std::string pred, std::initializer_list<std::string> arguments)
      : predicate(std::move(pred)), args(arguments) {}

  std::string str() const;
  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept;
};

/// Closed-world symbolic state; ordered so that printing is deterministic.
using SymbolicState = std::set<Atom>;

std::string to_string(const SymbolicState& s);

/// Dense ids for atoms.
class AtomTable {
 public:
  int intern(const Atom& a);
  /// -1 when absent.
  int find(const Atom& a) const;
  const Atom& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, int, AtomHash> index_;
};

}  // namespace utamp
