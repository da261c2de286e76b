#pragma once

#include "utamp/abstraction.hpp"
#include "utamp/geom.hpp"
#include "utamp/perception.hpp"
#include "utamp/symbolic/grounding.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace utamp {

/// Sampled 6D path. Knot times are cumulative chord lengths; samples include
/// every knot time, so the path passes through each waypoint exactly.
struct Trajectory {
  std::vector<Pose> waypoints;
  std::vector<double> knot_times;
  std::vector<double> times;
  std::vector<Pose> samples;
};

/// Natural cubic spline through a single column of values.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<double> y);
  double operator()(double t) const;

 private:
  std::vector<double> t_, y_, m_;  // m_: second derivatives at knots
};

/// Rewrites each angle to the representative nearest the previous waypoint's.
std::vector<Rpy> unwrap_orientations(const std::vector<Pose>& waypoints);

/// Natural cubic spline per pose component (x, y, z, roll, pitch, yaw) with
/// at least `samples` uniform samples, plus the knots. With `max_step` > 0
/// the uniform grid is refined so that consecutive times differ by at most
/// max_step. Throws std::invalid_argument for fewer than two waypoints.
Trajectory spline(const std::vector<Pose>& waypoints, int samples = 50, double max_step = 0.0);

/// The gripper's collision envelope, centred on the hand frame origin.
struct HandModel {
  BBox size{0.04, 0.08, 0.06};
};

enum class CommandKind { move_free, move_holding, grasp, release, operate };

std::string_view to_string(CommandKind k);

/// One step of the motion-level plan.
/// move_free/move_holding: `segments` are stop-to-stop trajectories;
/// `approach_target` is tolerated in contact during the last part of the
/// motion and `departure_object` during the first part.
/// grasp/release: `object`, `grasp`, `placement`, `support`, hand `target`.
/// operate: symbolic-only step (e.g. clean, cook) with its effects.
struct MotionCommand {
  CommandKind kind = CommandKind::move_free;
  std::size_t plan_step = 0;
  std::string object;
  std::string support;
  GraspConfig grasp;
  PlacementConfig placement;
  Pose target;
  std::vector<Trajectory> segments;
  std::string approach_target;
  std::string departure_object;
  std::string action;
  std::vector<Atom> add;
  std::vector<Atom> del;

  std::size_t sample_count() const;
};

struct DecomposeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExecutorConfig {
  HandModel hand;
  /// Minimum uniform samples per segment.
  int samples = 50;
  /// Upper bound on the spacing of samples along a segment (chord units).
  double sample_step = 0.005;
  /// Spacing of intermediate knots on the transit part of a motion.
  double knot_spacing = 0.02;
  /// Transit height above max(table top + 2 * tallest object).
  double clearance = 0.15;
  double allowed_penetration = 1e-6;
  /// Fraction of a motion's samples, at its end or start, in which contact
  /// with the approach target or departure object is tolerated.
  double whitelist_fraction = 0.2;
};

/// Height at which loaded and empty transit happens.
double transit_height(const Scene& scene, const ExecutorConfig& cfg = {});

/// Hand waypoints of one motion: start, retreat, lift, above pre, pre,
/// target, returned as three stop-to-stop segments (start-retreat and
/// pre-target linear, the transit in between splined).
std::vector<Trajectory> plan_motion(const Pose& start, const Pose& retreat, const Pose& pre,
                                    const Pose& target, double z_transit,
                                    const ExecutorConfig& cfg = {});

/// pick/pick-space become [move_free, grasp]; place/place-space become
/// [move_holding, release]; any other action becomes one operate command.
/// Hand targets come from the live poses of a kinematic dry run.
std::vector<MotionCommand> decompose(const std::vector<GroundAction>& plan, const Scene& scene,
                                     const ExecutorConfig& cfg = {});

struct CollisionEvent {
  std::size_t command = 0;
  std::size_t sample = 0;
  std::string moving;
  std::string other;
};

struct TraceStep {
  std::size_t command = 0;
  CommandKind kind = CommandKind::move_free;
  std::string object;
  /// Hand poses at every sample (one pose for non-moving commands).
  std::vector<Pose> hand;
  /// Pose of the attached object at every sample, when holding.
  std::vector<Pose> held;
};

struct ExecutionReport {
  bool success = false;
  std::vector<CollisionEvent> collisions;
  std::vector<Atom> missing_goals;
  std::string error;
  Scene final_scene;
  std::vector<TraceStep> trace;
  /// Largest deviation of the held object from its rigid attachment.
  double max_attachment_error = 0.0;
};

/// Replays commands on a copy of the scene, checking the hand box and any
/// attached object against solids and fixtures at every sample. Success
/// means no collision and every goal atom in perceive(final scene).
/// Ill-formed command sequences (grasping while holding, releasing an object
/// that is not held) are reported through `error`, not thrown.
ExecutionReport simulate(const std::vector<MotionCommand>& commands, const Scene& scene,
                         const std::vector<Atom>& goal, const ExecutorConfig& cfg = {});

}  // namespace utamp
