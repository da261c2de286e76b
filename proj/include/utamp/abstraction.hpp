#pragma once

#include "utamp/geom.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace utamp {

/// Functional parts of an object's bounding box.
enum class Part : std::uint8_t { on, under, left, right, front, back, in };

/// The six surface parts, in canonical order (also the base tie-break order).
inline constexpr std::array<Part, 6> kSides = {Part::on,    Part::under, Part::left,
                                               Part::right, Part::front, Part::back};
inline constexpr std::array<Part, 7> kAllParts = {Part::on,   Part::under, Part::left, Part::right,
                                                  Part::front, Part::back, Part::in};

std::string_view to_string(Part p);
std::optional<Part> parse_part(std::string_view s);
Part opposite(Part p);
bool is_side(Part p);
/// 0, 1 or 2 for x, y, z. Undefined for `in`.
int axis_of(Part p);
/// Outward unit normal of a side in the owner's frame; zero for `in`.
Vec3 outward_normal(Part p);

struct IllegalGrasp : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IllegalPlacement : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Palm / finger 1 / finger 2 contact parts of the grasped object.
struct GraspConfig {
  Part palm = Part::front;
  Part f1 = Part::left;
  Part f2 = Part::right;

  bool legal() const;
  std::string str() const;
  auto operator<=>(const GraspConfig&) const = default;
};

/// placed = part of the placed object touching the support, support = part of
/// the support touching the placed object.
struct PlacementConfig {
  Part placed = Part::under;
  Part support = Part::on;

  bool valid() const;
  bool container() const { return placed == Part::in && support == Part::in; }
  std::string str() const;
  auto operator<=>(const PlacementConfig&) const = default;
};

/// Centroid of a part's face (origin for `in`), in the owner's frame.
Vec3 part_centroid(Part part, const BBox& size);

/// Centre of the space associated with a part: one full box length away from
/// the owner's centre along the part's normal (origin for `in`).
Vec3 associated_space_offset(Part part, const BBox& size);

/// Hand orientation in the object frame. The hand's -z axis (out of the palm)
/// maps onto the palm part's outward normal and +y maps onto f1's outward
/// normal. Throws IllegalGrasp.
RotMatrix grasp_rotation(const GraspConfig& cfg);

/// Hand pose in the object frame.
Pose grasp_hand_pose(const GraspConfig& cfg, const BBox& size);

/// All legal grasps: palm side, opposite finger pair perpendicular to it, both
/// finger orders. Ordered by palm, then f1.
std::vector<GraspConfig> enumerate_legal_grasps();

/// The 36 side-to-side placements. The container placement `in/in` is not
/// part of this set.
std::vector<PlacementConfig> enumerate_surface_placements();

/// Rotation of the placed object in the support frame: the smallest rotation
/// that makes the placed part's normal anti-parallel to the support part's
/// normal. Throws IllegalPlacement.
RotMatrix placement_rotation(const PlacementConfig& cfg);

/// Placed object's pose in the support frame.
Pose placement_pose(const PlacementConfig& cfg, const BBox& placed_size, const BBox& support_size);

/// The side of a placed object facing the same way as `support_side` of the
/// support after placement `cfg`.
Part map_side_through_placement(const PlacementConfig& cfg, Part support_side);

Pose hand_world_pose(const Pose& object_world, const Pose& hand_in_object);
Pose object_world_from_support(const Pose& support_world, const Pose& object_in_support);

/// Approach point three times further out than the palm contact.
Vec3 pregrasp_position(const Pose& object_world, const GraspConfig& cfg, const BBox& size);

/// Support-frame offset scaled by three and mapped to the world.
Vec3 preplace_position(const Pose& support_world, const Vec3& offset);

}  // namespace utamp
