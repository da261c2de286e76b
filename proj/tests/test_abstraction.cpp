#include "test_support.hpp"
#include "utamp/abstraction.hpp"

#include <doctest.h>

#include <set>

using namespace utamp;
using namespace utamp::testing;

namespace {

template <typename A, typename B>
bool vec_close(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

Mat4 as_mat4(const Pose& p) {
  Mat4 m{};
  const Eigen::Matrix4d h = p.homogeneous();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i * 4 + j] = h(i, j);
  return m;
}

Vec3 apply_vec(const Mat4& m, const Vec3& v) {
  const auto r = apply(m, {v.x(), v.y(), v.z()});
  return {r[0], r[1], r[2]};
}

}  // namespace

TEST_CASE("part names, opposites and normals") {
  for (Part p : kAllParts) {
    CHECK(parse_part(to_string(p)) == p);
    CHECK(opposite(opposite(p)) == p);
  }
  CHECK_FALSE(parse_part("top").has_value());
  CHECK(opposite(Part::on) == Part::under);
  CHECK(opposite(Part::left) == Part::right);
  CHECK(opposite(Part::front) == Part::back);
  CHECK(opposite(Part::in) == Part::in);
  CHECK(vec_close(outward_normal(Part::on), Vec3(0, 0, 1)));
  CHECK(vec_close(outward_normal(Part::left), Vec3(0, 1, 0)));
  CHECK(vec_close(outward_normal(Part::front), Vec3(1, 0, 0)));
  CHECK(vec_close(outward_normal(Part::in), Vec3::Zero()));
  for (Part p : kSides) CHECK(vec_close(outward_normal(opposite(p)), -outward_normal(p)));
}

TEST_CASE("part centroids") {
  const BBox d{0.1, 0.3, 0.2};
  CHECK(vec_close(part_centroid(Part::on, {0.1, 0.1, 0.2}), Vec3(0, 0, 0.1)));
  CHECK(vec_close(part_centroid(Part::right, d), Vec3(0, -0.15, 0)));
  CHECK(vec_close(part_centroid(Part::on, d), Vec3(0, 0, 0.1)));
  CHECK(vec_close(part_centroid(Part::under, d), Vec3(0, 0, -0.1)));
  CHECK(vec_close(part_centroid(Part::left, d), Vec3(0, 0.15, 0)));
  CHECK(vec_close(part_centroid(Part::front, d), Vec3(0.05, 0, 0)));
  CHECK(vec_close(part_centroid(Part::back, d), Vec3(-0.05, 0, 0)));
  CHECK(vec_close(part_centroid(Part::in, d), Vec3::Zero()));
}

TEST_CASE("associated space offsets are one full extent along the normal") {
  const BBox d{0.1, 0.3, 0.2};
  CHECK(vec_close(associated_space_offset(Part::on, d), Vec3(0, 0, 0.2)));
  CHECK(vec_close(associated_space_offset(Part::under, d), Vec3(0, 0, -0.2)));
  CHECK(vec_close(associated_space_offset(Part::left, d), Vec3(0, 0.3, 0)));
  CHECK(vec_close(associated_space_offset(Part::right, d), Vec3(0, -0.3, 0)));
  CHECK(vec_close(associated_space_offset(Part::front, d), Vec3(0.1, 0, 0)));
  CHECK(vec_close(associated_space_offset(Part::back, d), Vec3(-0.1, 0, 0)));
  CHECK(vec_close(associated_space_offset(Part::in, d), Vec3::Zero()));
}

TEST_CASE("legal grasps") {
  const auto all = enumerate_legal_grasps();
  CHECK(all.size() == 24);
  std::set<GraspConfig> unique(all.begin(), all.end());
  CHECK(unique.size() == 24);
  for (Part palm : kSides) {
    int n = 0;
    for (const auto& g : all) n += g.palm == palm;
    CHECK(n == 4);
  }
  for (const auto& g : all) {
    CHECK(g.legal());
    CHECK(g.palm != Part::in);
    CHECK(g.f1 != Part::in);
    CHECK(g.f2 != Part::in);
  }
  std::set<GraspConfig> on_palm;
  for (const auto& g : all)
    if (g.palm == Part::on) on_palm.insert(g);
  const std::set<GraspConfig> expected = {{Part::on, Part::left, Part::right},
                                          {Part::on, Part::right, Part::left},
                                          {Part::on, Part::front, Part::back},
                                          {Part::on, Part::back, Part::front}};
  CHECK(on_palm == expected);
}

TEST_CASE("grasp_hand_pose accepts exactly the legal triples") {
  const BBox size{0.05, 0.05, 0.05};
  int legal = 0;
  for (Part a : kAllParts)
    for (Part b : kAllParts)
      for (Part c : kAllParts) {
        const GraspConfig g{a, b, c};
        if (g.legal()) {
          ++legal;
          CHECK_NOTHROW(grasp_hand_pose(g, size));
        } else {
          CHECK_THROWS_AS(grasp_hand_pose(g, size), IllegalGrasp);
        }
      }
  CHECK(legal == 24);
}

TEST_CASE("grasp orientation follows the hand frame rule") {
  const BBox size{0.1, 0.2, 0.3};
  for (const auto& g : enumerate_legal_grasps()) {
    const Pose h = grasp_hand_pose(g, size);
    CHECK(vec_close(h.position, part_centroid(g.palm, size)));
    const RotMatrix r = rpy_to_matrix(h.orientation);
    CHECK(vec_close(r * Vec3(0, 0, -1), outward_normal(g.palm), 1e-9));
    CHECK(vec_close(r * Vec3(0, 1, 0), outward_normal(g.f1), 1e-9));
    CHECK(vec_close(r, grasp_rotation(g), 1e-9));
  }
  // (on, back, front): palm down onto the top face, fingers closing along x.
  const Pose b = grasp_hand_pose({Part::on, Part::back, Part::front}, size);
  CHECK(rpy_equal(b.orientation, Rpy{kPi, 0, -kPi / 2}));
}

TEST_CASE("surface placements") {
  const auto all = enumerate_surface_placements();
  CHECK(all.size() == 36);
  std::set<PlacementConfig> unique(all.begin(), all.end());
  CHECK(unique.size() == 36);
  for (const auto& p : all) {
    CHECK(p.valid());
    CHECK_FALSE(p.container());
  }
  CHECK(PlacementConfig{Part::in, Part::in}.valid());
  CHECK_FALSE(PlacementConfig{Part::in, Part::on}.valid());
  CHECK_THROWS_AS(placement_pose({Part::on, Part::in}, {1, 1, 1}, {1, 1, 1}), IllegalPlacement);
}

TEST_CASE("placement pose examples") {
  const BBox d1{0.1, 0.2, 0.3}, d2{1.0, 2.0, 3.0};
  const Pose a = placement_pose({Part::under, Part::on}, d1, d2);
  CHECK(vec_close(a.position, Vec3(0, 0, (3.0 + 0.3) / 2)));
  CHECK(rpy_equal(a.orientation, Rpy{}));

  const Pose b = placement_pose({Part::left, Part::under}, d1, d2);
  CHECK(vec_close(b.position, Vec3(0, 0, -(3.0 + 0.2) / 2)));
  CHECK(rpy_equal(b.orientation, Rpy{kPi / 2, 0, 0}));

  const Pose c = placement_pose({Part::on, Part::left}, d1, d2);
  CHECK(vec_close(c.position, Vec3(0, (2.0 + 0.3) / 2, 0)));
  CHECK(rpy_equal(c.orientation, Rpy{kPi / 2, 0, 0}));

  const Pose d = placement_pose({Part::in, Part::in}, d1, d2);
  CHECK(poses_close(d, Pose::identity()));
}

TEST_CASE("placements put contact normals against each other") {
  Rng rng(41);
  for (const auto& cfg : enumerate_surface_placements()) {
    const BBox d1 = random_size(rng), d2 = random_size(rng);
    const Pose p = placement_pose(cfg, d1, d2);
    const RotMatrix r = rpy_to_matrix(p.orientation);
    CHECK(vec_close(r * outward_normal(cfg.placed), -outward_normal(cfg.support), 1e-9));
    CHECK(vec_close(r, placement_rotation(cfg), 1e-9));

    // Position on the support normal ray, half the placed extent out.
    const Vec3 n = outward_normal(cfg.support);
    const Vec3 from = p.position - part_centroid(cfg.support, d2);
    const double half = d1[axis_of(cfg.placed)] / 2;
    CHECK(vec_close(from, n * half, 1e-9));

    // The placed contact face touches the support contact face.
    const Vec3 face = p.transform(part_centroid(cfg.placed, d1));
    CHECK(vec_close(face, part_centroid(cfg.support, d2), 1e-9));
    CHECK(map_side_through_placement(cfg, cfg.support) == opposite(cfg.placed));
  }
}

TEST_CASE("hand_world_pose and object_world_from_support examples") {
  const Pose h(Vec3(0.01, 0.02, 0.1), Rpy{0.1, 0.2, 0.3});
  CHECK(poses_close(hand_world_pose(Pose::identity(), h), h));

  const Pose moved = Pose::translation(Vec3(1, 2, 3));
  CHECK(vec_close(hand_world_pose(moved, Pose::translation(Vec3(0, 0, 0.1))).position,
                  Vec3(1, 2, 3.1)));

  const Pose yawed(Vec3(1, 1, 0), Rpy{0, 0, kPi / 2});
  const Pose r = hand_world_pose(yawed, Pose::translation(Vec3(0.05, 0, 0)));
  CHECK(vec_close(r.position, Vec3(1, 1.05, 0), 1e-12));
  CHECK(max_abs_diff(as_mat4(r), mul(homogeneous(yawed), homogeneous(Pose::translation(
                                                             Vec3(0.05, 0, 0))))) < 1e-12);

  CHECK(poses_close(object_world_from_support(Pose::identity(), h), h));

  const BBox table{1.0, 1.0, 0.8}, cube{1.0, 1.0, 1.0};
  const Pose table_pose = Pose::translation(Vec3(0, 0, 0.4));
  const Pose on_table = placement_pose({Part::under, Part::on}, cube, table);
  const Pose cube_world = object_world_from_support(table_pose, on_table);
  CHECK(vec_close(cube_world.position, Vec3(0, 0, 0.4 + 0.4 + 0.5), 1e-12));
}

TEST_CASE("support, object and hand chain matches one matrix product") {
  Rng rng(43);
  const auto grasps = enumerate_legal_grasps();
  const auto places = enumerate_surface_placements();
  for (int i = 0; i < 200; ++i) {
    const Pose support = random_pose(rng);
    const BBox d1 = random_size(rng), d2 = random_size(rng);
    const Pose object_in_support = placement_pose(places[rng() % places.size()], d1, d2);
    const Pose hand_in_object = grasp_hand_pose(grasps[rng() % grasps.size()], d1);
    const Pose chained =
        hand_world_pose(object_world_from_support(support, object_in_support), hand_in_object);
    const Mat4 oracle = mul(mul(homogeneous(support), homogeneous(object_in_support)),
                            homogeneous(hand_in_object));
    CHECK(max_abs_diff(as_mat4(chained), oracle) < 1e-9);
  }
}

TEST_CASE("pregrasp and preplace positions") {
  CHECK(vec_close(pregrasp_position(Pose::identity(), {Part::on, Part::left, Part::right},
                                    {0.1, 0.1, 0.2}),
                  Vec3(0, 0, 0.3)));
  CHECK(vec_close(pregrasp_position(Pose::identity(), {Part::front, Part::left, Part::right},
                                    {0.1, 0.1, 0.1}),
                  Vec3(0.15, 0, 0)));

  const BBox d{0.1, 0.2, 0.3};
  CHECK(vec_close(preplace_position(Pose::identity(), associated_space_offset(Part::on, d)),
                  Vec3(0, 0, 0.9)));

  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const Pose obj = random_pose(rng);
    const BBox size = random_size(rng);
    const GraspConfig g = random_grasp(rng);
    const Vec3 c = part_centroid(g.palm, size);
    const Mat4 m = homogeneous(obj);
    CHECK(vec_close(pregrasp_position(obj, g, size), apply_vec(m, 3 * c), 1e-9));
    const Vec3 off = associated_space_offset(random_surface_placement(rng).support, size);
    CHECK(vec_close(preplace_position(obj, off), apply_vec(m, 3 * off), 1e-9));
  }
}
