#pragma once

#include "utamp/abstraction.hpp"
#include "utamp/geom.hpp"
#include "utamp/symbolic/atom.hpp"
#include "utamp/symbolic/domain.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace utamp {

/// solid: movable or static box with symbolic parts. fixture: collision-only
/// geometry such as the table body. space: empty container box. hand: the
/// gripper.
/// surface: a solid that is never moved, such as a marked region of a table.
enum class ObjectKind { solid, surface, fixture, space, hand };

/// Solids and surfaces take part in contacts and collisions.
inline bool is_solid_kind(ObjectKind k) { return k == ObjectKind::solid || k == ObjectKind::surface; }

std::string_view to_string(ObjectKind k);
std::optional<ObjectKind> parse_object_kind(std::string_view s);

struct PhysicalObject {
  std::string id;
  ObjectKind kind = ObjectKind::solid;
  Pose pose;
  BBox size;
};

struct HoldState {
  std::string object;
  GraspConfig grasp;
};

struct Scene {
  std::vector<PhysicalObject> objects;
  std::vector<PhysicalObject> spaces;
  Pose robot_base;
  Vec3 reference_normal = Vec3::UnitZ();
  std::optional<HoldState> holding;
  /// Non-geometric atoms carried with the scene, e.g. (cleaned bglass1) or
  /// (cleaner dishw).
  std::vector<Atom> facts;

  const PhysicalObject* find(const std::string& id) const;
  PhysicalObject* find(const std::string& id);
  const PhysicalObject& get(const std::string& id) const;
  PhysicalObject& get(const std::string& id);
  const PhysicalObject* hand() const;
};

struct SceneError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AmbiguousOccupancy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientFreeSpace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unique ids, unit reference normal, positive sizes, exactly one hand.
/// Throws SceneError.
void check_scene(const Scene& scene);

struct AssociatedSpace {
  std::string owner;
  Part part = Part::in;
  Pose pose;
  BBox size;
};

AssociatedSpace associated_space(const PhysicalObject& obj, Part part);

/// Alignment threshold for force sides: cos(5 degrees).
double force_alignment_threshold();

/// Initial symbolic state of a scene. Solids whose centroid lies inside a
/// space are absorbed: they only appear through oc(in, space, solid).
SymbolicState perceive(const Scene& scene);

/// Solids whose centroid lies inside some space.
std::vector<std::string> absorbed_solids(const Scene& scene);

struct TabletopPart {
  std::string id;
  Pose pose;
  BBox size;
};

struct TablePartOptions {
  std::string table_id = "table";
  std::string prefix = "table";
  /// Thickness of the generated pads; their top is flush with the table.
  double depth = 0.06;
};

/// Footprint-sized parts under every non-absorbed solid resting on the table
/// top, then `requested` free cells from a grid scan (+x first, then +y).
/// Cell size is the largest solid footprint plus 10 percent.
std::vector<TabletopPart> generate_table_parts(const Scene& scene, int requested,
                                               const TablePartOptions& opts = {});

/// Adds generated parts to the scene as surfaces.
void add_table_parts(Scene& scene, const std::vector<TabletopPart>& parts);

}  // namespace utamp
