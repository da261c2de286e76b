#include "utamp/symbolic/domain.hpp"

#include <algorithm>

namespace utamp {

std::string Literal::str() const {
  std::string out = "(" + predicate;
  for (const auto& a : args) out += " " + a;
  out += ")";
  return negated ? "(not " + out + ")" : out;
}

const PredicateDecl* Domain::predicate(const std::string& n) const {
  for (const auto& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

const ActionSchema* Domain::action(const std::string& n) const {
  for (const auto& a : actions)
    if (a.name == n) return &a;
  return nullptr;
}

bool Domain::is_subtype(const std::string& type, const std::string& ancestor) const {
  if (ancestor == "object") return true;
  std::string cur = type;
  // Bounded walk guards against cyclic declarations.
  for (std::size_t guard = 0; guard <= types.size(); ++guard) {
    if (cur == ancestor) return true;
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const TypedName& t) { return t.name == cur; });
    if (it == types.end() || it->type == cur) return false;
    cur = it->type;
  }
  return false;
}

std::set<std::string> Domain::static_predicates() const {
  std::set<std::string> out;
  for (const auto& p : predicates) out.insert(p.name);
  for (const auto& a : actions) {
    for (const auto& l : a.add_effects) out.erase(l.predicate);
    for (const auto& l : a.del_effects) out.erase(l.predicate);
  }
  return out;
}

void canonicalize(Domain& d) {
  auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
  std::sort(d.requirements.begin(), d.requirements.end());
  std::stable_sort(d.types.begin(), d.types.end(), by_name);
  std::stable_sort(d.constants.begin(), d.constants.end(), by_name);
  std::stable_sort(d.predicates.begin(), d.predicates.end(), by_name);
  std::stable_sort(d.actions.begin(), d.actions.end(), by_name);
}

void canonicalize(Problem& p) {
  std::stable_sort(p.objects.begin(), p.objects.end(),
                   [](const TypedName& a, const TypedName& b) { return a.name < b.name; });
  for (auto* atoms : {&p.init, &p.goal}) {
    std::sort(atoms->begin(), atoms->end());
    atoms->erase(std::unique(atoms->begin(), atoms->end()), atoms->end());
  }
}

std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::object_support: return "object-support";
    case TaskKind::object_container: return "object-container";
    case TaskKind::hybrid: return "hybrid";
  }
  return "?";
}

std::optional<TaskKind> parse_task_kind(std::string_view s) {
  for (auto k : {TaskKind::object_support, TaskKind::object_container, TaskKind::hybrid})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

namespace {

Literal pos(std::string pred, std::vector<std::string> args) {
  return {std::move(pred), std::move(args), false};
}
Literal neg(std::string pred, std::vector<std::string> args) {
  return {std::move(pred), std::move(args), true};
}

std::vector<TypedName> typed(std::initializer_list<std::string> names, const std::string& type) {
  std::vector<TypedName> out;
  for (const auto& n : names) out.push_back({n, type});
  return out;
}

void append(std::vector<TypedName>& dst, std::vector<TypedName> src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

ActionSchema pick_schema() {
  ActionSchema a;
  a.name = "pick";
  a.parameters = {{"?o1", "movable"}, {"?o2", "physical"}};
  append(a.parameters, typed({"?o1-h-p", "?o1-h-f1", "?o1-h-f2", "?o1-o2", "?o2-o1", "?o1-base",
                              "?o1-force"},
                             "side"));
  a.precondition = {
      pos("oc", {"in", "hand", "air"}),
      pos("isgrasp", {"?o1-h-p", "?o1-h-f1", "?o1-h-f2"}),
      pos("oc", {"?o1-h-p", "?o1", "air"}),
      pos("oc", {"?o1-h-f1", "?o1", "air"}),
      pos("oc", {"?o1-h-f2", "?o1", "air"}),
      pos("base", {"?o1", "?o1-base"}),
      neg("isopposite", {"?o1-base", "?o1-h-p"}),
      pos("oc", {"?o1-o2", "?o1", "?o2"}),
      pos("oc", {"?o2-o1", "?o2", "?o1"}),
      pos("force", {"?o2", "?o2-o1"}),
      pos("force", {"?o1", "?o1-force"}),
      pos("oc", {"?o1-force", "?o1", "air"}),
  };
  a.add_effects = {
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      // Reconstruction: both faces of the broken contact become free.
      pos("oc", {"?o1-o2", "?o1", "air"}),
      pos("oc", {"?o2-o1", "?o2", "air"}),
  };
  a.del_effects = {
      pos("oc", {"in", "hand", "air"}),
      pos("oc", {"?o1-h-p", "?o1", "air"}),
      pos("oc", {"?o1-h-f1", "?o1", "air"}),
      pos("oc", {"?o1-h-f2", "?o1", "air"}),
      pos("oc", {"?o1-o2", "?o1", "?o2"}),
      pos("oc", {"?o2-o1", "?o2", "?o1"}),
      pos("force", {"?o1", "?o1-force"}),
      pos("base", {"?o1", "?o1-base"}),
  };
  return a;
}

ActionSchema place_schema() {
  ActionSchema a;
  a.name = "place";
  a.parameters = {{"?o1", "movable"}, {"?o2", "physical"}};
  append(a.parameters, typed({"?o1-h-p", "?o1-h-f1", "?o1-h-f2", "?o1-o2", "?o2-o1", "?o2-base",
                              "?o1-base", "?o1-force"},
                             "side"));
  a.precondition = {
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      pos("isgrasp", {"?o1-h-p", "?o1-h-f1", "?o1-h-f2"}),
      pos("oc", {"?o1-o2", "?o1", "air"}),
      pos("oc", {"?o2-o1", "?o2", "air"}),
      pos("force", {"?o2", "?o2-o1"}),
      pos("base", {"?o2", "?o2-base"}),
      pos("base2base", {"?o2-base", "?o2-o1", "?o1-o2", "?o1-base"}),
      neg("isopposite", {"?o1-base", "?o1-h-p"}),
      pos("isopposite", {"?o1-force", "?o1-o2"}),
  };
  a.add_effects = {
      pos("oc", {"in", "hand", "air"}),
      pos("oc", {"?o1-h-p", "?o1", "air"}),
      pos("oc", {"?o1-h-f1", "?o1", "air"}),
      pos("oc", {"?o1-h-f2", "?o1", "air"}),
      pos("oc", {"?o1-o2", "?o1", "?o2"}),
      pos("oc", {"?o2-o1", "?o2", "?o1"}),
      pos("base", {"?o1", "?o1-base"}),
      pos("force", {"?o1", "?o1-force"}),
  };
  a.del_effects = {
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      pos("oc", {"?o1-o2", "?o1", "air"}),
      pos("oc", {"?o2-o1", "?o2", "air"}),
  };
  return a;
}

std::vector<TypedName> space_parameters() {
  std::vector<TypedName> p = {{"?o1", "movable"}, {"?o2", "physical"}};
  append(p, typed({"?o1-h-p", "?o1-h-f1", "?o1-h-f2"}, "side"));
  append(p, typed({"?o2-h-p", "?o2-h-f1", "?o2-h-f2"}, "physical"));
  append(p, typed({"?o2-base", "?o1-bb1", "?o1-bb2", "?o1-bb3"}, "side"));
  return p;
}

// Room for the hand: the container's neighbours on the palm and finger sides
// are empty spaces, and the three exposed sides are the ones not in contact.
std::vector<Literal> space_clearance() {
  std::vector<Literal> out = {
      pos("isgrasp", {"?o1-h-p", "?o1-h-f1", "?o1-h-f2"}),
      pos("force", {"?o2", "in"}),
      pos("oc", {"?o1-h-p", "?o2", "?o2-h-p"}),
      pos("oc", {"?o1-h-f1", "?o2", "?o2-h-f1"}),
      pos("oc", {"?o1-h-f2", "?o2", "?o2-h-f2"}),
      pos("oc", {"in", "?o2-h-p", "air"}),
      pos("oc", {"in", "?o2-h-f1", "air"}),
      pos("oc", {"in", "?o2-h-f2", "air"}),
      pos("base", {"?o2", "?o2-base"}),
      neg("isopposite", {"?o2-base", "?o1-h-p"}),
  };
  const char* bbs[] = {"?o1-bb1", "?o1-bb2", "?o1-bb3"};
  const char* hand[] = {"?o1-h-p", "?o1-h-f1", "?o1-h-f2"};
  for (const char* bb : bbs)
    for (const char* h : hand) out.push_back(neg("isequal", {bb, h}));
  out.push_back(neg("isequal", {"?o1-bb1", "?o1-bb2"}));
  out.push_back(neg("isequal", {"?o1-bb1", "?o1-bb3"}));
  out.push_back(neg("isequal", {"?o1-bb2", "?o1-bb3"}));
  return out;
}

ActionSchema pick_space_schema() {
  ActionSchema a;
  a.name = "pick-space";
  a.parameters = space_parameters();
  a.precondition = {pos("oc", {"in", "hand", "air"}), pos("oc", {"in", "?o2", "?o1"})};
  for (auto& l : space_clearance()) a.precondition.push_back(std::move(l));
  a.add_effects = {
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      pos("oc", {"in", "?o2", "air"}),
      pos("oc", {"?o1-bb1", "?o1", "air"}),
      pos("oc", {"?o1-bb2", "?o1", "air"}),
      pos("oc", {"?o1-bb3", "?o1", "air"}),
  };
  a.del_effects = {
      pos("oc", {"in", "hand", "air"}),
      pos("oc", {"in", "?o2", "?o1"}),
  };
  return a;
}

ActionSchema place_space_schema() {
  ActionSchema a;
  a.name = "place-space";
  a.parameters = space_parameters();
  a.precondition = {
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      pos("oc", {"in", "?o2", "air"}),
  };
  for (auto& l : space_clearance()) a.precondition.push_back(std::move(l));
  a.precondition.push_back(pos("oc", {"?o1-bb1", "?o1", "air"}));
  a.precondition.push_back(pos("oc", {"?o1-bb2", "?o1", "air"}));
  a.precondition.push_back(pos("oc", {"?o1-bb3", "?o1", "air"}));
  a.add_effects = {
      pos("oc", {"in", "?o2", "?o1"}),
      pos("oc", {"in", "hand", "air"}),
  };
  a.del_effects = {
      pos("oc", {"in", "?o2", "air"}),
      pos("oc", {"in", "hand", "?o1"}),
      pos("oc", {"?o1-h-p", "?o1", "hand"}),
      pos("oc", {"?o1-h-f1", "?o1", "hand"}),
      pos("oc", {"?o1-h-f2", "?o1", "hand"}),
      pos("oc", {"?o1-bb1", "?o1", "air"}),
      pos("oc", {"?o1-bb2", "?o1", "air"}),
      pos("oc", {"?o1-bb3", "?o1", "air"}),
  };
  return a;
}

std::vector<Atom> part_static_facts(const std::optional<std::vector<GraspConfig>>& whitelist) {
  std::vector<Atom> out;
  auto name = [](Part p) { return std::string(to_string(p)); };

  const std::vector<GraspConfig> grasps = whitelist ? *whitelist : enumerate_legal_grasps();
  for (const auto& g : grasps) {
    if (!g.legal()) throw IllegalGrasp("whitelisted grasp is not legal: " + g.str());
    out.push_back({"isgrasp", {name(g.palm), name(g.f1), name(g.f2)}});
  }
  for (Part s : kSides) out.push_back({"isopposite", {name(s), name(opposite(s))}});
  for (Part s : kAllParts) out.push_back({"isequal", {name(s), name(s)}});

  // base2base(b2, s, p, b1): support base b2, support contact s, placed
  // contact p; b1 is the placed object's side facing where b2 faces.
  auto placements = enumerate_surface_placements();
  placements.push_back({Part::in, Part::in});
  for (const auto& cfg : placements)
    for (Part b2 : kSides)
      out.push_back({"base2base",
                     {name(b2), name(cfg.support), name(cfg.placed),
                      name(map_side_through_placement(cfg, b2))}});

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

BuiltinDomain builtin_domain(TaskKind kind,
                             const std::optional<std::vector<GraspConfig>>& grasp_whitelist) {
  Domain d;
  d.name = "utamp-" + std::string(to_string(kind));
  d.requirements = {":negative-preconditions", ":strips", ":typing"};
  // air and hand are entities; scene objects are physical, movable if they
  // can be picked.
  d.types = {{"part", "object"},
             {"side", "part"},
             {"entity", "object"},
             {"physical", "entity"},
             {"movable", "physical"}};
  for (Part p : kSides) d.constants.push_back({std::string(to_string(p)), "side"});
  d.constants.push_back({"in", "part"});
  d.constants.push_back({kAir, "entity"});
  d.constants.push_back({kHand, "entity"});

  d.predicates = {
      {"oc", typed({"?p"}, "part")},
      {"isgrasp", typed({"?p", "?f1", "?f2"}, "part")},
      {"isopposite", typed({"?a", "?b"}, "part")},
      {"isequal", typed({"?a", "?b"}, "part")},
      {"base", {{"?o", "entity"}, {"?p", "part"}}},
      {"force", {{"?o", "entity"}, {"?p", "part"}}},
      {"base2base", typed({"?b2", "?s", "?p", "?b1"}, "part")},
  };
  append(d.predicates[0].parameters, typed({"?a", "?b"}, "entity"));

  if (kind != TaskKind::object_container) {
    d.actions.push_back(pick_schema());
    d.actions.push_back(place_schema());
  }
  if (kind != TaskKind::object_support) {
    d.actions.push_back(pick_space_schema());
    d.actions.push_back(place_space_schema());
  }
  canonicalize(d);
  return {std::move(d), part_static_facts(grasp_whitelist)};
}

void add_kitchen_operators(Domain& d) {
  d.predicates.push_back({"cleaner", typed({"?d"}, "entity")});
  d.predicates.push_back({"cooker", typed({"?m"}, "entity")});
  d.predicates.push_back({"cleaned", typed({"?o"}, "entity")});
  d.predicates.push_back({"cooked", typed({"?o"}, "entity")});

  ActionSchema clean;
  clean.name = "clean";
  clean.parameters = {{"?o", "movable"}, {"?d", "physical"}};
  clean.precondition = {pos("cleaner", {"?d"}), pos("oc", {"on", "?d", "?o"})};
  clean.add_effects = {pos("cleaned", {"?o"})};

  ActionSchema cook;
  cook.name = "cook";
  cook.parameters = {{"?o", "movable"}, {"?m", "physical"}};
  cook.precondition = {pos("cooker", {"?m"}), pos("cleaned", {"?o"}),
                       pos("oc", {"on", "?m", "?o"})};
  cook.add_effects = {pos("cooked", {"?o"})};

  d.actions.push_back(std::move(clean));
  d.actions.push_back(std::move(cook));
  canonicalize(d);
}

}  // namespace utamp
