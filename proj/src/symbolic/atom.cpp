#include "utamp/symbolic/atom.hpp"

namespace utamp {

std::string Atom::str() const {
  std::string out = "(" + predicate;
  for (const auto& a : args) out += " " + a;
  return out + ")";
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
  std::size_t h = std::hash<std::string>{}(a.predicate);
  for (const auto& s : a.args) h = h * 1000003u ^ std::hash<std::string>{}(s);
  return h;
}

std::string to_string(const SymbolicState& s) {
  std::string out;
  for (const auto& a : s) {
    if (!out.empty()) out += '\n';
    out += a.str();
  }
  return out;
}

int AtomTable::intern(const Atom& a) {
  auto [it, inserted] = index_.try_emplace(a, static_cast<int>(atoms_.size()));
  if (inserted) atoms_.push_back(a);
  return it->second;
}

int AtomTable::find(const Atom& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace utamp
