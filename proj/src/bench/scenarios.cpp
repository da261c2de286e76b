#include "utamp/bench.hpp"

#include <set>

namespace utamp {

namespace {

constexpr double kTableTop = 0.4;
constexpr double kCell = 0.05;   // block edge
constexpr double kPitch = 0.07;  // space grid pitch; leaves room for the hand between blocks
constexpr double kTableWidth = 1.6;
constexpr double kPadSize = 0.1;
constexpr double kPadDepth = 0.06;

PhysicalObject box(std::string id, ObjectKind kind, Vec3 pos, BBox size) {
  PhysicalObject o;
  o.pose = Pose(pos, Rpy{}, kWorldFrame, id);
  o.id = std::move(id);
  o.kind = kind;
  o.size = size;
  return o;
}

GraspConfig front_grasp() { return {Part::front, Part::left, Part::right}; }

Scene base_scene() {
  Scene s;
  s.robot_base = Pose(Vec3(1.5, 0.0, kTableTop), Rpy{}, kWorldFrame, "robot");
  s.objects.push_back(
      box("table", ObjectKind::fixture, Vec3(0, 0, kTableTop / 2), {1.0, kTableWidth, kTableTop}));
  PhysicalObject hand = box("hand", ObjectKind::hand, Vec3(0.6, 0.0, 0.8), HandModel{}.size);
  hand.pose.orientation = grasp_hand_pose(front_grasp(), {kCell, kCell, kCell}).orientation;
  s.objects.push_back(hand);
  return s;
}

// Container grid: row 1 is nearest the robot (+x), columns run towards -y.
struct Grid {
  double x_row1;
  double y_col0;
  Vec3 at(int row, int col) const {
    return {x_row1 - (row - 1) * kPitch, y_col0 - col * kPitch, kTableTop + kCell / 2};
  }
};

std::string grid_name(int row, int col) {
  std::string c = std::to_string(col);
  if (c.size() < 2) c = "0" + c;
  return "s-r" + std::to_string(row) + "-c" + c;
}

void add_spaces(Scene& s, const Grid& g, int row, int first_col, int last_col,
                const std::vector<std::pair<int, std::string>>& names) {
  for (int c = first_col; c <= last_col; ++c) {
    std::string id = grid_name(row, c);
    for (const auto& [col, n] : names)
      if (col == c) id = n;
    s.spaces.push_back(box(id, ObjectKind::space, g.at(row, c), {kPitch, kPitch, kCell}));
  }
}

void add_block(Scene& s, const std::string& id, const std::string& space) {
  const Vec3 p = s.get(space).pose.position;
  s.objects.push_back(box(id, ObjectKind::solid, p, {kCell, kCell, kCell}));
}

std::string idx(const std::string& prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

Scenario scenario_task1() {
  Scenario sc;
  sc.name = "task1-green-blocks";
  sc.kind = TaskKind::object_container;
  sc.grasp_whitelist = std::vector<GraspConfig>{front_grasp()};
  sc.scene = base_scene();
  const Grid g{0.30, 10 * kPitch};

  std::vector<std::pair<int, std::string>> row2, row3;
  for (int i = 1; i <= 4; ++i) row2.push_back({2 * i - 1, idx("sblue", i)});
  for (int i = 1; i <= 4; ++i) row2.push_back({7 + 2 * i, idx("scyan", i)});
  row2.push_back({17, "stable1"});
  row2.push_back({19, "stable2"});
  for (int i = 1; i <= 3; ++i) row3.push_back({2 * i + 1, idx("sgreen", i)});
  for (int i = 1; i <= 3; ++i) row3.push_back({9 + 2 * i, idx("sgreeng", i)});
  add_spaces(sc.scene, g, 1, 0, 20, {});
  add_spaces(sc.scene, g, 2, 0, 20, row2);
  add_spaces(sc.scene, g, 3, 2, 16, row3);

  for (int i = 1; i <= 4; ++i) add_block(sc.scene, idx("bblue", i), idx("sblue", i));
  for (int i = 1; i <= 4; ++i) add_block(sc.scene, idx("bcyan", i), idx("scyan", i));
  for (int i = 1; i <= 3; ++i) add_block(sc.scene, idx("bgreen", i), idx("sgreen", i));

  for (int i = 1; i <= 3; ++i) sc.goal.push_back({"oc", {"in", idx("sgreeng", i), idx("bgreen", i)}});
  for (int i = 1; i <= 4; ++i) sc.goal.push_back({"oc", {"in", idx("sblue", i), idx("bblue", i)}});
  for (int i = 1; i <= 4; ++i) sc.goal.push_back({"oc", {"in", idx("scyan", i), idx("bcyan", i)}});

  sc.bounds = {60, 10.0, 46, 0.31, 135.0, 0.72};
  return sc;
}

Scenario scenario_task2() {
  Scenario sc;
  sc.name = "task2-dinner-for-two";
  sc.kind = TaskKind::hybrid;
  sc.grasp_whitelist = std::vector<GraspConfig>{front_grasp()};
  sc.kitchen_operators = true;
  sc.scene = base_scene();
  Scene& s = sc.scene;
  const Grid g{0.30, 0.70};

  std::vector<std::pair<int, std::string>> row2, row3;
  for (int i = 1; i <= 4; ++i) row2.push_back({2 * i - 1, idx("sturnip", i)});
  for (int i = 1; i <= 2; ++i) row3.push_back({2 * i + 1, idx("scabbage", i)});
  add_spaces(s, g, 1, 0, 8, {});
  add_spaces(s, g, 2, 0, 8, row2);
  add_spaces(s, g, 3, 2, 6, row3);
  for (int i = 1; i <= 4; ++i) add_block(s, idx("bturnip", i), idx("sturnip", i));
  for (int i = 1; i <= 2; ++i) add_block(s, idx("bcabbage", i), idx("scabbage", i));

  // Flat markers sunk into the table, tops flush with its surface.
  const double pad_z = kTableTop - kPadDepth / 2;
  const BBox pad{kPadSize, kPadSize, kPadDepth};
  const std::pair<const char*, Vec3> pads[] = {
      {"dishw", {0.30, -0.05, pad_z}},        {"microw", {0.30, -0.23, pad_z}},
      {"plate1", {0.30, -0.41, pad_z}},       {"table-glass1", {0.10, -0.05, pad_z}},
      {"table-glass2", {0.10, -0.23, pad_z}}, {"plate2", {0.10, -0.41, pad_z}},
  };
  for (const auto& [id, p] : pads) s.objects.push_back(box(id, ObjectKind::surface, p, pad));

  const double glass_y[] = {-0.05, -0.23, -0.41};
  for (int i = 1; i <= 3; ++i)
    s.objects.push_back(box(idx("bglass", i), ObjectKind::solid,
                            Vec3(-0.10, glass_y[i - 1], kTableTop + kCell / 2),
                            {kCell, kCell, kCell}));
  add_table_parts(s, generate_table_parts(s, 0));

  s.facts = {{"cleaner", {"dishw"}}, {"cooker", {"microw"}}};

  for (int i = 1; i <= 2; ++i) {
    sc.goal.push_back({"cooked", {idx("bcabbage", i)}});
    sc.goal.push_back({"oc", {"on", idx("plate", i), idx("bcabbage", i)}});
  }
  for (int i = 1; i <= 4; ++i) sc.goal.push_back({"oc", {"in", idx("sturnip", i), idx("bturnip", i)}});
  for (int i = 1; i <= 3; ++i) sc.goal.push_back({"cleaned", {idx("bglass", i)}});
  for (int i = 1; i <= 2; ++i)
    sc.goal.push_back({"oc", {"on", idx("table-glass", i), idx("bglass", i)}});

  sc.bounds = {75, 10.0, 57, 0.94, 44.0, 0.76};
  return sc;
}

Scenario scenario_by_task(int task) {
  if (task == 1) return scenario_task1();
  if (task == 2) return scenario_task2();
  throw std::invalid_argument("unknown task " + std::to_string(task) + " (expected 1 or 2)");
}

void check_scenario(const Scenario& s) {
  if (s.bounds.max_plan_length == 0 || !(s.bounds.max_plan_seconds > 0))
    throw std::invalid_argument("scenario '" + s.name + "': bounds must be positive");
  check_scene(s.scene);
  std::set<std::string> known = {kAir, kHand};
  for (Part p : kAllParts) known.insert(std::string(to_string(p)));
  for (const auto& o : s.scene.objects) known.insert(o.id);
  for (const auto& o : s.scene.spaces) known.insert(o.id);
  for (const auto& g : s.goal) {
    if (g.predicate.empty()) throw std::invalid_argument("goal atom without predicate");
    for (const auto& a : g.args)
      if (!known.count(a))
        throw std::invalid_argument("goal " + g.str() + " names unknown object '" + a + "'");
  }
}

BuiltinDomain scenario_domain(const Scenario& s) {
  BuiltinDomain d = builtin_domain(s.kind, s.grasp_whitelist);
  if (s.kitchen_operators) add_kitchen_operators(d.domain);
  return d;
}

Problem scenario_problem(const Scenario& s, const BuiltinDomain& d) {
  Problem p;
  p.name = s.name;
  p.domain = d.domain.name;
  for (const auto& o : s.scene.objects)
    if (o.kind == ObjectKind::solid) p.objects.push_back({o.id, "movable"});
    else if (o.kind == ObjectKind::surface) p.objects.push_back({o.id, "physical"});
  for (const auto& o : s.scene.spaces) p.objects.push_back({o.id, "physical"});
  const SymbolicState s0 = perceive(s.scene);
  p.init.assign(s0.begin(), s0.end());
  p.init.insert(p.init.end(), d.static_facts.begin(), d.static_facts.end());
  p.goal = s.goal;
  canonicalize(p);
  return p;
}

}  // namespace utamp
