#include "test_support.hpp"
#include "utamp/perception.hpp"
#include "utamp/scene_io.hpp"

#include <doctest.h>

#include <algorithm>

using namespace utamp;
using namespace utamp::testing;

namespace {

bool vec_close(const Vec3& a, const Vec3& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// A 0.4 m square slab with a 0.1 m cube resting centred on it.
Scene slab_scene(bool with_cube, const Rpy& cube_rpy = {}) {
  Scene s = tabletop_scene();
  s.objects.push_back(make_box("slab", ObjectKind::surface, {0.2, 0, 0.45}, {0.4, 0.4, 0.1}));
  if (with_cube) s.objects.push_back(make_box("cube", ObjectKind::solid, {0.2, 0, 0.55}, {0.1, 0.1, 0.1}, cube_rpy));
  return s;
}

std::vector<Atom> with_predicate(const SymbolicState& s, const std::string& pred,
                                 const std::string& first) {
  std::vector<Atom> out;
  for (const auto& a : s)
    if (a.predicate == pred && a.args[0] == first) out.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("associated spaces") {
  PhysicalObject cube = make_box("c", ObjectKind::solid, {0, 0, 0}, {1, 1, 1});
  const AssociatedSpace on = associated_space(cube, Part::on);
  CHECK(on.owner == "c");
  CHECK(vec_close(on.pose.position, Vec3(0, 0, 1)));
  CHECK(on.size.dx == 1.0);
  CHECK(on.size.dy == 1.0);
  CHECK(on.size.dz == 1.0);
  CHECK(poses_close(associated_space(cube, Part::in).pose, cube.pose));

  PhysicalObject yawed = make_box("y", ObjectKind::solid, {0, 0, 0}, {0.2, 0.1, 0.1}, {0, 0, kPi / 2});
  const AssociatedSpace front = associated_space(yawed, Part::front);
  CHECK(vec_close(front.pose.position, Vec3(0, 0.2, 0), 1e-12));
  CHECK(rpy_equal(front.pose.orientation, yawed.pose.orientation));

  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    PhysicalObject o = make_box("o", ObjectKind::solid, {0, 0, 0}, random_size(rng));
    o.pose = random_pose(rng);
    for (Part p : kAllParts) {
      const AssociatedSpace sp = associated_space(o, p);
      const Mat4 m = homogeneous(o.pose);
      const Vec3 off = associated_space_offset(p, o.size);
      const auto expect = apply(m, {off.x(), off.y(), off.z()});
      CHECK(vec_close(sp.pose.position, Vec3(expect[0], expect[1], expect[2]), 1e-9));
    }
  }
}

TEST_CASE("a cube resting on a surface") {
  const SymbolicState s = perceive(slab_scene(true));
  CHECK(s.count({"oc", {"under", "cube", "slab"}}));
  CHECK(s.count({"oc", {"on", "slab", "cube"}}));
  for (const char* p : {"on", "left", "right", "front", "back"})
    CHECK(s.count({"oc", {p, "cube", "air"}}));
  CHECK(with_predicate(s, "force", "cube") == std::vector<Atom>{{"force", {"cube", "on"}}});
  CHECK(with_predicate(s, "base", "cube") == std::vector<Atom>{{"base", {"cube", "front"}}});
  CHECK(s.count({"oc", {"in", "hand", "air"}}));
  for (const auto& a : s)
    for (const auto& x : a.args) CHECK(x != "table");
}

TEST_CASE("an empty surface") {
  const SymbolicState s = perceive(slab_scene(false));
  CHECK(s.count({"oc", {"on", "slab", "air"}}));
  for (const auto& a : s)
    for (const auto& x : a.args) CHECK(x != "cube");
}

TEST_CASE("force and base follow the object's orientation") {
  const SymbolicState rolled = perceive(slab_scene(true, {kPi / 2, 0, 0}));
  CHECK(with_predicate(rolled, "force", "cube") == std::vector<Atom>{{"force", {"cube", "left"}}});
  const SymbolicState turned = perceive(slab_scene(true, {0, 0, kPi}));
  CHECK(with_predicate(turned, "base", "cube") == std::vector<Atom>{{"base", {"cube", "back"}}});
  // Tilted by more than five degrees: no side is aligned with the reference normal.
  const SymbolicState tilted = perceive(slab_scene(true, {0.2, 0, 0}));
  CHECK(with_predicate(tilted, "force", "cube").empty());
  CHECK(with_predicate(tilted, "base", "cube").size() == 1);
}

TEST_CASE("two centroids in one space are ambiguous") {
  Scene s = slab_scene(true);
  s.objects.push_back(make_box("a", ObjectKind::solid, {0.17, 0, 0.62}, {0.02, 0.02, 0.02}));
  s.objects.push_back(make_box("b", ObjectKind::solid, {0.23, 0, 0.62}, {0.02, 0.02, 0.02}));
  CHECK_THROWS_AS(perceive(s), AmbiguousOccupancy);
}

TEST_CASE("container spaces absorb their contents") {
  Scene s = tabletop_scene();
  s.spaces.push_back(make_box("s1", ObjectKind::space, {0.3, 0.0, 0.425}, {0.07, 0.07, 0.05}));
  s.spaces.push_back(make_box("s2", ObjectKind::space, {0.3, -0.07, 0.425}, {0.07, 0.07, 0.05}));
  s.objects.push_back(make_box("b1", ObjectKind::solid, {0.3, 0.0, 0.425}, {0.05, 0.05, 0.05}));
  const SymbolicState st = perceive(s);
  CHECK(st.count({"oc", {"in", "s1", "b1"}}));
  CHECK(st.count({"oc", {"in", "s2", "air"}}));
  CHECK(st.count({"oc", {"right", "s1", "s2"}}));
  CHECK(st.count({"oc", {"left", "s2", "s1"}}));
  CHECK(st.count({"force", {"s1", "in"}}));
  CHECK(absorbed_solids(s) == std::vector<std::string>{"b1"});
  for (const auto& a : st)
    if (a.predicate != "oc" || a.args[0] != "in") CHECK(a.args[0] != "b1");
}

TEST_CASE("perception ignores object order") {
  Rng rng(67);
  for (const auto& w : micro_worlds()) {
    const SymbolicState ref = perceive(w.scenario.scene);
    Scene shuffled = w.scenario.scene;
    std::shuffle(shuffled.objects.begin(), shuffled.objects.end(), rng);
    std::shuffle(shuffled.spaces.begin(), shuffled.spaces.end(), rng);
    CHECK(perceive(shuffled) == ref);
  }
}

TEST_CASE("perception recovers constructed configurations") {
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const InversionCase c = random_inversion_case(rng);
    CAPTURE(c.label);
    CHECK(oc_atoms_of(perceive(c.scene), c.subjects) == c.expected);
  }
}

TEST_CASE("every solid and space has exactly one base") {
  for (const auto& w : micro_worlds()) {
    const SymbolicState s = perceive(w.scenario.scene);
    for (const auto& o : w.scenario.scene.objects) {
      if (!is_solid_kind(o.kind)) continue;
      const auto absorbed = absorbed_solids(w.scenario.scene);
      const bool inside = std::find(absorbed.begin(), absorbed.end(), o.id) != absorbed.end();
      CHECK(with_predicate(s, "base", o.id).size() == (inside ? 0u : 1u));
      if (!inside) CHECK_FALSE(with_predicate(s, "force", o.id).empty());
    }
    for (const auto& sp : w.scenario.scene.spaces) CHECK(with_predicate(s, "base", sp.id).size() == 1);
  }
}

TEST_CASE("table parts under resting objects") {
  Scene s = tabletop_scene();
  const double ys[] = {-0.05, -0.23, -0.41};
  for (int i = 0; i < 3; ++i)
    s.objects.push_back(make_box("glass" + std::to_string(i + 1), ObjectKind::solid,
                                 {-0.1, ys[i], 0.425}, {0.05, 0.05, 0.05}));
  const auto parts = generate_table_parts(s, 0);
  REQUIRE(parts.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(parts[i].id == "table" + std::to_string(i + 1));
    CHECK(parts[i].pose.position.x() == doctest::Approx(-0.1));
    CHECK(parts[i].pose.position.y() == doctest::Approx(ys[i]));
    CHECK(parts[i].pose.position.z() + parts[i].size.dz / 2 == doctest::Approx(0.4));
    CHECK(parts[i].size.dx == doctest::Approx(0.05));
  }
  add_table_parts(s, parts);
  const SymbolicState st = perceive(s);
  for (int i = 0; i < 3; ++i) {
    const std::string part = "table" + std::to_string(i + 1), glass = "glass" + std::to_string(i + 1);
    CHECK(st.count({"oc", {"on", part, glass}}));
    CHECK(st.count({"oc", {"under", glass, part}}));
    CHECK(s.get(part).kind == ObjectKind::surface);
  }
}

TEST_CASE("free table cells in scan order") {
  Scene s = tabletop_scene();
  s.objects.push_back(make_box("held", ObjectKind::solid, {0.6, 0, 0.8}, {0.05, 0.05, 0.05}));
  s.holding = HoldState{"held", {Part::front, Part::left, Part::right}};
  const auto parts = generate_table_parts(s, 2);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].pose.position.y() == doctest::Approx(parts[1].pose.position.y()));
  CHECK(parts[1].pose.position.x() > parts[0].pose.position.x());
  CHECK(parts[0].size.dx == doctest::Approx(0.055));
  CHECK(parts[0].id == "table1");
  CHECK(parts[1].id == "table2");
  CHECK(generate_table_parts(s, 2)[1].pose.position == parts[1].pose.position);
}

TEST_CASE("a full table has no free cells") {
  Scene s = tabletop_scene();
  s.objects.front().size = {0.1, 0.1, 0.4};
  s.objects.push_back(make_box("cube", ObjectKind::solid, {0, 0, 0.425}, {0.05, 0.05, 0.05}));
  CHECK(generate_table_parts(s, 0).size() == 1);
  CHECK_THROWS_AS(generate_table_parts(s, 1), InsufficientFreeSpace);
  CHECK_THROWS_AS(generate_table_parts(s, -1), std::invalid_argument);
}

TEST_CASE("scene checks") {
  Scene s = slab_scene(true);
  CHECK_NOTHROW(check_scene(s));
  Scene dup = s;
  dup.objects.push_back(dup.objects.back());
  CHECK_THROWS_AS(check_scene(dup), SceneError);
  Scene no_hand = s;
  no_hand.objects.erase(no_hand.objects.begin() + 1);
  CHECK_THROWS_AS(check_scene(no_hand), SceneError);
  Scene flat = s;
  flat.objects.back().size.dz = 0;
  CHECK_THROWS_AS(check_scene(flat), SceneError);
  Scene normal = s;
  normal.reference_normal = Vec3(0, 0, 2);
  CHECK_THROWS_AS(check_scene(normal), SceneError);
}

TEST_CASE("scene JSON round trip") {
  for (int task : {1, 2}) {
    const Scene s = scenario_by_task(task).scene;
    const std::string text = scene_to_json(s);
    const Scene back = scene_from_json(text);
    CHECK(scene_to_json(back) == text);
    CHECK(perceive(back) == perceive(s));
  }
  Scene held = slab_scene(true);
  held.holding = HoldState{"cube", {Part::on, Part::left, Part::right}};
  held.facts = {{"cleaned", {"cube"}}};
  const Scene back = scene_from_json(scene_to_json(held));
  REQUIRE(back.holding.has_value());
  CHECK(back.holding->object == "cube");
  CHECK(back.holding->grasp == held.holding->grasp);
  CHECK(back.facts == held.facts);
  CHECK_THROWS_AS(scene_from_json("{\"format\": \"something-else\", \"version\": 1}"), SceneFormatError);
  CHECK_THROWS_AS(scene_from_json("not json"), SceneFormatError);
  for (ObjectKind k : {ObjectKind::solid, ObjectKind::surface, ObjectKind::fixture, ObjectKind::space,
                       ObjectKind::hand})
    CHECK(parse_object_kind(to_string(k)) == k);
}
