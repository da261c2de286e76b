#pragma once

#include "utamp/symbolic/domain.hpp"
#include "utamp/symbolic/grounding.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace utamp {

struct ParseError : std::runtime_error {
  ParseError(int line_, int column_, std::vector<std::string> expected_, std::string found_);
  int line;
  int column;
  std::vector<std::string> expected;
  std::string found;
};

/// Deterministic text: sections in fixed order, names sorted.
std::string export_domain(const Domain& d);
std::string export_problem(const Problem& p);

Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text);

struct PlanStep {
  std::string action;
  std::vector<std::string> args;
  auto operator<=>(const PlanStep&) const = default;
};

/// One "(action arg ...)" per line.
std::string export_plan(const std::vector<GroundAction>& plan);
std::vector<PlanStep> parse_plan(std::string_view text);
/// Instantiates every step against the domain schemas.
std::vector<GroundAction> instantiate_plan(const Domain& d, const std::vector<PlanStep>& steps);

}  // namespace utamp
