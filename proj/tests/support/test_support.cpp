#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace utamp::testing {

Mat4 homogeneous(const Pose& p) {
  const double ca = std::cos(p.orientation.yaw), sa = std::sin(p.orientation.yaw);
  const double cb = std::cos(p.orientation.pitch), sb = std::sin(p.orientation.pitch);
  const double cg = std::cos(p.orientation.roll), sg = std::sin(p.orientation.roll);
  return {ca * cb, ca * sb * sg - sa * cg, ca * sb * cg + sa * sg, p.position.x(),
          sa * cb, sa * sb * sg + ca * cg, sa * sb * cg - ca * sg, p.position.y(),
          -sb,     cb * sg,                cb * cg,                p.position.z(),
          0,       0,                      0,                      1};
}

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i * 4 + j] += a[i * 4 + k] * b[k * 4 + j];
  return c;
}

Mat4 inverse(const Mat4& m) {
  double a[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) a[i][j] = j < 4 ? m[i * 4 + j] : (j - 4 == i ? 1.0 : 0.0);
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-15) throw std::runtime_error("singular matrix");
    for (int j = 0; j < 8; ++j) std::swap(a[col][j], a[pivot][j]);
    const double d = a[col][col];
    for (int j = 0; j < 8; ++j) a[col][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (int j = 0; j < 8; ++j) a[r][j] -= f * a[col][j];
    }
  }
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i * 4 + j] = a[i][j + 4];
  return out;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double d = 0;
  for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::array<double, 3> apply(const Mat4& m, const std::array<double, 3>& p) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = m[i * 4] * p[0] + m[i * 4 + 1] * p[1] + m[i * 4 + 2] * p[2] + m[i * 4 + 3];
  return out;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Rpy random_rpy(Rng& rng, double margin) {
  return {uniform(rng, -kPi, kPi), uniform(rng, -kPi / 2 + margin, kPi / 2 - margin),
          uniform(rng, -kPi, kPi)};
}

Pose random_pose(Rng& rng, double extent) {
  return Pose(Vec3(uniform(rng, -extent, extent), uniform(rng, -extent, extent),
                   uniform(rng, -extent, extent)),
              random_rpy(rng));
}

BBox random_size(Rng& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

namespace {

Part random_side(Rng& rng) {
  return kSides[std::uniform_int_distribution<std::size_t>(0, kSides.size() - 1)(rng)];
}

// Opposite pairs written out by hand rather than taken from the library.
Part flip(Part p) {
  switch (p) {
    case Part::on: return Part::under;
    case Part::under: return Part::on;
    case Part::left: return Part::right;
    case Part::right: return Part::left;
    case Part::front: return Part::back;
    case Part::back: return Part::front;
    case Part::in: return Part::in;
  }
  return Part::in;
}

}  // namespace

GraspConfig random_grasp(Rng& rng) {
  for (;;) {
    const Part palm = random_side(rng);
    const Part f1 = random_side(rng);
    if (f1 == palm || f1 == flip(palm)) continue;
    return {palm, f1, flip(f1)};
  }
}

PlacementConfig random_surface_placement(Rng& rng) { return {random_side(rng), random_side(rng)}; }

PhysicalObject make_box(const std::string& id, ObjectKind kind, const Vec3& position,
                        const BBox& size, const Rpy& rpy) {
  PhysicalObject o;
  o.id = id;
  o.kind = kind;
  o.pose = Pose(position, rpy, kWorldFrame, id);
  o.size = size;
  return o;
}

Scene tabletop_scene() {
  Scene s;
  s.robot_base = Pose(Vec3(1.5, 0, 0.4), Rpy{}, kWorldFrame, "robot");
  s.objects.push_back(make_box("table", ObjectKind::fixture, {0, 0, 0.2}, {1.0, 1.6, 0.4}));
  const GraspConfig front{Part::front, Part::left, Part::right};
  s.objects.push_back(make_box("hand", ObjectKind::hand, {0.6, 0, 0.8}, HandModel{}.size,
                               grasp_hand_pose(front, {0.05, 0.05, 0.05}).orientation));
  return s;
}

InversionCase random_inversion_case(Rng& rng) {
  InversionCase c;
  c.scene = tabletop_scene();
  const BBox d1 = random_size(rng, 0.05, 0.1);
  const BBox d2 = random_size(rng, 0.05, 0.1);
  const Pose base = random_pose(rng, 1.0);
  auto sides_air = [&](const std::string& id, const std::vector<Part>& except) {
    for (Part p : kSides)
      if (std::find(except.begin(), except.end(), p) == except.end())
        c.expected.insert({"oc", {std::string(to_string(p)), id, kAir}});
  };
  switch (rng() % 3) {
    case 0: {
      const PlacementConfig cfg = random_surface_placement(rng);
      c.label = "place " + cfg.str();
      const Pose obj = compose(base, placement_pose(cfg, d1, d2));
      c.scene.objects.push_back(make_box("sup", ObjectKind::surface, base.position, d2, base.orientation));
      c.scene.objects.push_back(make_box("obj", ObjectKind::solid, obj.position, d1, obj.orientation));
      c.subjects = {"obj", "sup"};
      c.expected.insert({"oc", {std::string(to_string(cfg.placed)), "obj", "sup"}});
      c.expected.insert({"oc", {std::string(to_string(cfg.support)), "sup", "obj"}});
      sides_air("obj", {cfg.placed});
      sides_air("sup", {cfg.support});
      break;
    }
    case 1: {
      c.label = "contain";
      const Pose obj = compose(base, placement_pose({Part::in, Part::in}, d1, d2));
      c.scene.spaces.push_back(make_box("sp", ObjectKind::space, base.position, d2, base.orientation));
      c.scene.objects.push_back(make_box("obj", ObjectKind::solid, obj.position, d1, obj.orientation));
      c.subjects = {"sp", "obj"};
      c.expected.insert({"oc", {"in", "sp", "obj"}});
      sides_air("sp", {});
      break;
    }
    default: {
      const GraspConfig g = random_grasp(rng);
      c.label = "grasp " + g.str();
      c.scene.objects.push_back(make_box("obj", ObjectKind::solid, base.position, d1, base.orientation));
      c.scene.get("hand").pose = hand_world_pose(base, grasp_hand_pose(g, d1));
      c.scene.holding = HoldState{"obj", g};
      c.subjects = {"obj", "hand"};
      c.expected.insert({"oc", {"in", kHand, "obj"}});
      for (Part p : {g.palm, g.f1, g.f2}) c.expected.insert({"oc", {std::string(to_string(p)), "obj", kHand}});
      sides_air("obj", {g.palm, g.f1, g.f2});
      break;
    }
  }
  return c;
}

SymbolicState oc_atoms_of(const SymbolicState& s, const std::vector<std::string>& subjects) {
  SymbolicState out;
  for (const auto& a : s)
    if (a.predicate == "oc" &&
        std::find(subjects.begin(), subjects.end(), a.args[1]) != subjects.end())
      out.insert(a);
  return out;
}

namespace {

constexpr double kBlock = 0.05;

struct Location {
  std::string id;
  bool space;
};

std::vector<Location> build_layout(Scene& s, const std::string& kinds) {
  std::vector<Location> out;
  const bool all_spaces = kinds.find('P') == std::string::npos;
  const double pitch = all_spaces ? 0.07 : 0.15;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const double y = pitch * (static_cast<double>(kinds.size()) - 1) / 2 - pitch * static_cast<double>(i);
    if (kinds[i] == 'S') {
      const std::string id = "s" + std::to_string(i + 1);
      s.spaces.push_back(make_box(id, ObjectKind::space, {0.3, y, 0.425}, {0.07, 0.07, 0.05}));
      out.push_back({id, true});
    } else {
      const std::string id = "p" + std::to_string(i + 1);
      s.objects.push_back(make_box(id, ObjectKind::surface, {0.3, y, 0.37}, {0.1, 0.1, 0.06}));
      out.push_back({id, false});
    }
  }
  return out;
}

Vec3 location_centre(const Scene& s, const Location& l) {
  const Vec3 p = s.get(l.id).pose.position;
  return {p.x(), p.y(), 0.4 + kBlock / 2};
}

Atom at(const Location& l, const std::string& block) {
  return {"oc", {l.space ? "in" : "on", l.id, block}};
}

}  // namespace

std::vector<MicroWorld> micro_worlds() {
  const std::vector<std::pair<std::string, std::string>> layouts = {
      {"pads2", "PP"}, {"pads3", "PPP"}, {"spaces3", "SSS"}, {"mixed3", "SPP"}};
  const std::vector<std::pair<std::string, std::vector<GraspConfig>>> whitelists = {
      {"front", {{Part::front, Part::left, Part::right}}},
      {"top", {{Part::on, Part::left, Part::right}}},
      {"front+top", {{Part::front, Part::left, Part::right}, {Part::on, Part::front, Part::back}}},
  };
  const BBox block{kBlock, kBlock, kBlock};
  std::vector<MicroWorld> out;
  for (const auto& [layout_name, kinds] : layouts) {
    for (const std::string init : {"one", "two", "stack"}) {
      Scene base = tabletop_scene();
      const auto locs = build_layout(base, kinds);
      if (init == "stack" && locs[0].space) continue;
      const Location& first = locs[0];
      const Location& second = locs[1];
      const Location& last = locs.back();
      base.objects.push_back(make_box("b1", ObjectKind::solid, location_centre(base, first), block));
      if (init == "two")
        base.objects.push_back(make_box("b2", ObjectKind::solid, location_centre(base, second), block));
      if (init == "stack")
        base.objects.push_back(make_box("b2", ObjectKind::solid,
                                        location_centre(base, first) + Vec3(0, 0, kBlock), block));

      std::vector<std::pair<std::string, std::vector<Atom>>> goals;
      if (init == "one") {
        goals.push_back({"b1-last", {at(last, "b1")}});
        goals.push_back({"b1-second", {at(second, "b1")}});
      } else if (init == "two") {
        goals.push_back({"b1-last", {at(last, "b1")}});
        goals.push_back({"swap", {at(second, "b1"), at(first, "b2")}});
        goals.push_back({"b2-on-b1", {{"oc", {"on", "b1", "b2"}}}});
      } else {
        goals.push_back({"b2-second", {at(second, "b2")}});
        goals.push_back({"b1-second", {at(second, "b1")}});
        goals.push_back({"b1-on-b2", {{"oc", {"on", "b2", "b1"}}}});
      }
      for (const auto& [goal_name, goal] : goals) {
        for (const auto& [wl_name, wl] : whitelists) {
          MicroWorld w;
          w.label = layout_name + "/" + init + "/" + goal_name + "/" + wl_name;
          w.scenario.name = w.label;
          w.scenario.scene = base;
          w.scenario.kind = TaskKind::hybrid;
          w.scenario.grasp_whitelist = wl;
          w.scenario.goal = goal;
          w.scenario.bounds = {1000, 60.0, 0, 0.0, 0.0, 0.0};
          out.push_back(std::move(w));
        }
      }
    }
  }
  return out;
}

SearchOracle breadth_first(const std::vector<GroundAction>& actions, const SymbolicState& init,
                           const std::vector<Atom>& goal, std::size_t max_states) {
  std::map<Atom, int> ids;
  auto id = [&](const Atom& a) {
    auto [it, inserted] = ids.emplace(a, static_cast<int>(ids.size()));
    return it->second;
  };
  struct IntAction {
    std::vector<int> pre, pre_neg, add, del;
  };
  std::vector<IntAction> ops;
  for (const auto& a : actions) {
    IntAction o;
    for (const auto& x : a.pre) o.pre.push_back(id(x));
    for (const auto& x : a.pre_neg) o.pre_neg.push_back(id(x));
    for (const auto& x : a.add) o.add.push_back(id(x));
    for (const auto& x : a.del) o.del.push_back(id(x));
    ops.push_back(std::move(o));
  }
  std::vector<int> goal_ids;
  for (const auto& g : goal) goal_ids.push_back(id(g));
  std::set<int> start;
  for (const auto& a : init) start.insert(id(a));

  SearchOracle r;
  std::set<std::set<int>> seen{start};
  std::deque<std::pair<std::set<int>, std::size_t>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    if (std::all_of(goal_ids.begin(), goal_ids.end(), [&](int g) { return s.count(g) > 0; })) {
      r.reachable = true;
      r.depth = depth;
      break;
    }
    for (const auto& o : ops) {
      if (!std::all_of(o.pre.begin(), o.pre.end(), [&](int x) { return s.count(x) > 0; })) continue;
      if (std::any_of(o.pre_neg.begin(), o.pre_neg.end(), [&](int x) { return s.count(x) > 0; }))
        continue;
      std::set<int> next = s;
      for (int x : o.del) next.erase(x);
      for (int x : o.add) next.insert(x);
      if (!seen.insert(next).second) continue;
      if (seen.size() > max_states) {
        r.truncated = true;
        r.states = seen.size();
        return r;
      }
      queue.emplace_back(std::move(next), depth + 1);
    }
  }
  r.states = seen.size();
  return r;
}

Grounded ground_scenario(const Scenario& s) {
  Grounded g;
  g.domain = scenario_domain(s);
  g.problem = scenario_problem(s, g.domain);
  g.actions = ground(g.domain.domain, g.problem);
  g.task = build_task(g.domain.domain, g.problem);
  return g;
}

}  // namespace utamp::testing
