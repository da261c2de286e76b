#include "utamp/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace utamp {

namespace {

constexpr std::array<std::string_view, 7> kPartNames = {"on",    "under", "left", "right",
                                                        "front", "back",  "in"};

Part part_from_normal(const Vec3& n) {
  for (Part p : kSides)
    if ((outward_normal(p) - n).cwiseAbs().maxCoeff() < 1e-6) return p;
  throw GeometryError("vector is not an axis-aligned unit normal");
}

// The 24 proper rotations that permute and sign-flip the coordinate axes.
const std::vector<RotMatrix>& axis_rotations() {
  static const std::vector<RotMatrix> rotations = [] {
    std::vector<RotMatrix> out;
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& perm : perms)
      for (int signs = 0; signs < 8; ++signs) {
        RotMatrix m = RotMatrix::Zero();
        for (int c = 0; c < 3; ++c) m(perm[c], c) = (signs >> c) & 1 ? -1.0 : 1.0;
        if (m.determinant() > 0) out.push_back(m);
      }
    return out;
  }();
  return rotations;
}

}  // namespace

std::string_view to_string(Part p) { return kPartNames[static_cast<std::size_t>(p)]; }

std::optional<Part> parse_part(std::string_view s) {
  for (Part p : kAllParts)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

Part opposite(Part p) {
  switch (p) {
    case Part::on: return Part::under;
    case Part::under: return Part::on;
    case Part::left: return Part::right;
    case Part::right: return Part::left;
    case Part::front: return Part::back;
    case Part::back: return Part::front;
    case Part::in: return Part::in;
  }
  return p;
}

bool is_side(Part p) { return p != Part::in; }

int axis_of(Part p) {
  switch (p) {
    case Part::front:
    case Part::back: return 0;
    case Part::left:
    case Part::right: return 1;
    case Part::on:
    case Part::under: return 2;
    case Part::in: break;
  }
  return -1;
}

Vec3 outward_normal(Part p) {
  switch (p) {
    case Part::on: return {0, 0, 1};
    case Part::under: return {0, 0, -1};
    case Part::left: return {0, 1, 0};
    case Part::right: return {0, -1, 0};
    case Part::front: return {1, 0, 0};
    case Part::back: return {-1, 0, 0};
    case Part::in: break;
  }
  return Vec3::Zero();
}

bool GraspConfig::legal() const {
  if (!is_side(palm) || !is_side(f1) || !is_side(f2)) return false;
  if (f1 != opposite(f2)) return false;
  return axis_of(palm) != axis_of(f1);
}

std::string GraspConfig::str() const {
  return "(" + std::string(to_string(palm)) + "," + std::string(to_string(f1)) + "," +
         std::string(to_string(f2)) + ")";
}

bool PlacementConfig::valid() const {
  return container() || (is_side(placed) && is_side(support));
}

std::string PlacementConfig::str() const {
  return "(" + std::string(to_string(placed)) + "," + std::string(to_string(support)) + ")";
}

Vec3 part_centroid(Part part, const BBox& size) {
  return outward_normal(part).cwiseProduct(size.half());
}

Vec3 associated_space_offset(Part part, const BBox& size) {
  return outward_normal(part).cwiseProduct(size.extents());
}

RotMatrix grasp_rotation(const GraspConfig& cfg) {
  if (!cfg.legal()) throw IllegalGrasp("illegal grasp configuration " + cfg.str());
  RotMatrix r;
  r.col(2) = -outward_normal(cfg.palm);
  r.col(1) = outward_normal(cfg.f1);
  r.col(0) = r.col(1).cross(r.col(2));
  return r;
}

Pose grasp_hand_pose(const GraspConfig& cfg, const BBox& size) {
  const RotMatrix r = grasp_rotation(cfg);
  return Pose(part_centroid(cfg.palm, size), matrix_to_rpy_canonical<double>(r));
}

std::vector<GraspConfig> enumerate_legal_grasps() {
  std::vector<GraspConfig> out;
  for (Part palm : kSides)
    for (Part f1 : kSides) {
      GraspConfig g{palm, f1, opposite(f1)};
      if (g.legal()) out.push_back(g);
    }
  return out;
}

std::vector<PlacementConfig> enumerate_surface_placements() {
  std::vector<PlacementConfig> out;
  for (Part a : kSides)
    for (Part b : kSides) out.push_back({a, b});
  return out;
}

RotMatrix placement_rotation(const PlacementConfig& cfg) {
  if (!cfg.valid()) throw IllegalPlacement("illegal placement configuration " + cfg.str());
  if (cfg.container()) return RotMatrix::Identity();

  const Vec3 from = outward_normal(cfg.placed);
  const Vec3 to = -outward_normal(cfg.support);
  // Smallest rotation angle first, then the least yaw, pitch and roll.
  using Key = std::tuple<double, double, double, double, double, double, double>;
  std::optional<std::pair<Key, RotMatrix>> best;
  for (const RotMatrix& r : axis_rotations()) {
    if ((r * from - to).cwiseAbs().maxCoeff() > 1e-9) continue;
    const double angle = std::acos(std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0));
    const Rpy w = matrix_to_rpy_canonical<double>(r);
    const Key key{std::round(angle * 1e9), std::abs(w.yaw),  std::abs(w.pitch), std::abs(w.roll),
                  -w.yaw,                  -w.pitch,         -w.roll};
    if (!best || key < best->first) best = {key, r};
  }
  return best->second;
}

Pose placement_pose(const PlacementConfig& cfg, const BBox& placed_size, const BBox& support_size) {
  const RotMatrix r = placement_rotation(cfg);
  if (cfg.container()) return Pose::identity();
  const Vec3 n = outward_normal(cfg.support);
  const double half_extent = placed_size[axis_of(cfg.placed)] / 2.0;
  return Pose(part_centroid(cfg.support, support_size) + n * half_extent,
              matrix_to_rpy_canonical<double>(r));
}

Part map_side_through_placement(const PlacementConfig& cfg, Part support_side) {
  const RotMatrix r = placement_rotation(cfg);
  return part_from_normal(r.transpose() * outward_normal(support_side));
}

Pose hand_world_pose(const Pose& object_world, const Pose& hand_in_object) {
  return compose(object_world, hand_in_object);
}

Pose object_world_from_support(const Pose& support_world, const Pose& object_in_support) {
  return compose(support_world, object_in_support);
}

Vec3 pregrasp_position(const Pose& object_world, const GraspConfig& cfg, const BBox& size) {
  if (!cfg.legal()) throw IllegalGrasp("illegal grasp configuration " + cfg.str());
  return object_world.transform(3.0 * part_centroid(cfg.palm, size));
}

Vec3 preplace_position(const Pose& support_world, const Vec3& offset) {
  return support_world.transform(3.0 * offset);
}

}  // namespace utamp
