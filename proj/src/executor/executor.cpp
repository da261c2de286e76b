#include "utamp/executor.hpp"

#include "utamp/log.hpp"
#include "utamp/symbolic/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace utamp {

std::string_view to_string(CommandKind k) {
  switch (k) {
    case CommandKind::move_free: return "move_free";
    case CommandKind::move_holding: return "move_holding";
    case CommandKind::grasp: return "grasp";
    case CommandKind::release: return "release";
    case CommandKind::operate: return "operate";
  }
  return "?";
}

std::size_t MotionCommand::sample_count() const {
  std::size_t n = 0;
  for (const auto& s : segments) n += s.samples.size();
  return n;
}

namespace {

Pose bare(const Pose& p) { return Pose(p.position, p.orientation); }

void set_pose(PhysicalObject& o, const Pose& p) {
  o.pose.position = p.position;
  o.pose.orientation = p.orientation;
}

PhysicalObject& hand_of(Scene& s) {
  for (auto& o : s.objects)
    if (o.kind == ObjectKind::hand) return o;
  throw SceneError("scene has no hand");
}

double top_of(const PhysicalObject& o) {
  const RotMatrix r = o.pose.rotation();
  const Vec3 h = o.size.half();
  return o.pose.position.z() + std::abs(r(2, 0)) * h.x() + std::abs(r(2, 1)) * h.y() +
         std::abs(r(2, 2)) * h.z();
}

// Splits [a, b] into pieces no longer than `spacing`; returns interior and end points.
void subdivide(const Vec3& a, const Vec3& b, const Rpy& ra, const Rpy& rb, double spacing,
               std::vector<Pose>& out) {
  const double len = (b - a).norm();
  if (len <= 0.0) return;
  const int n = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-9)));
  for (int i = 1; i <= n; ++i) {
    const double s = static_cast<double>(i) / n;
    const Rpy r{ra.roll + s * (rb.roll - ra.roll), ra.pitch + s * (rb.pitch - ra.pitch),
                ra.yaw + s * (rb.yaw - ra.yaw)};
    out.emplace_back(i == n ? b : Vec3(a + s * (b - a)), r);
  }
}

bool same_pose(const Pose& a, const Pose& b) { return poses_close(a, b, 1e-12); }

// Index of a named parameter in the builtin schemas.
std::size_t param_index(const std::string& schema, const std::string& param) {
  static const Domain d = [] {
    Domain dom = builtin_domain(TaskKind::hybrid).domain;
    add_kitchen_operators(dom);
    return dom;
  }();
  const ActionSchema* a = d.action(schema);
  if (!a) throw DecomposeError("unknown manipulation schema '" + schema + "'");
  for (std::size_t i = 0; i < a->parameters.size(); ++i)
    if (a->parameters[i].name == param) return i;
  throw DecomposeError("schema '" + schema + "' has no parameter " + param);
}

const std::string& arg(const GroundAction& a, const std::string& param) {
  const std::size_t i = param_index(a.schema, param);
  if (i >= a.args.size()) throw DecomposeError("too few arguments in " + a.str());
  return a.args[i];
}

Part part_arg(const GroundAction& a, const std::string& param) {
  const auto p = parse_part(arg(a, param));
  if (!p) throw DecomposeError("'" + arg(a, param) + "' is not a part in " + a.str());
  return *p;
}

GraspConfig grasp_of(const GroundAction& a) {
  GraspConfig g{part_arg(a, "?o1-h-p"), part_arg(a, "?o1-h-f1"), part_arg(a, "?o1-h-f2")};
  if (!g.legal()) throw DecomposeError("illegal grasp " + g.str() + " in " + a.str());
  return g;
}

}  // namespace

double transit_height(const Scene& scene, const ExecutorConfig& cfg) {
  double table = 0.0, tallest = 0.0, highest = 0.0;
  bool any_fixture = false;
  for (const auto& o : scene.objects) {
    if (o.kind == ObjectKind::fixture) {
      table = any_fixture ? std::max(table, top_of(o)) : top_of(o);
      any_fixture = true;
    } else if (is_solid_kind(o.kind)) {
      tallest = std::max({tallest, o.size.dx, o.size.dy, o.size.dz});
      highest = std::max(highest, top_of(o));
    }
  }
  for (const auto& s : scene.spaces) highest = std::max(highest, top_of(s));
  return std::max(table + 2.0 * tallest, highest + tallest) + cfg.clearance;
}

std::vector<Trajectory> plan_motion(const Pose& start, const Pose& retreat, const Pose& pre,
                                    const Pose& target, double z_transit,
                                    const ExecutorConfig& cfg) {
  std::vector<Trajectory> segs;
  auto add = [&](const std::vector<Pose>& pts) {
    if (pts.size() >= 2) segs.push_back(spline(pts, cfg.samples, cfg.sample_step));
  };
  const Pose s = bare(start), r = bare(retreat), p = bare(pre), t = bare(target);
  if (!same_pose(s, r)) add({s, r});

  // Lift, cross at transit height, descend. Orientation turns only while crossing.
  const auto ang = unwrap_orientations({r, p});
  const Vec3 lift(r.position.x(), r.position.y(), z_transit);
  const Vec3 above(p.position.x(), p.position.y(), z_transit);
  std::vector<Pose> transit = {Pose(r.position, ang[0])};
  subdivide(r.position, lift, ang[0], ang[0], cfg.knot_spacing, transit);
  subdivide(lift, above, ang[0], ang[1], cfg.knot_spacing, transit);
  subdivide(above, p.position, ang[1], ang[1], cfg.knot_spacing, transit);
  if (transit.size() >= 2) {
    transit.front() = r;
    transit.back() = p;
    add(transit);
  }

  if (!same_pose(p, t)) add({p, t});
  if (segs.empty()) add({s, t});
  return segs;
}

std::vector<MotionCommand> decompose(const std::vector<GroundAction>& plan, const Scene& scene,
                                     const ExecutorConfig& cfg) {
  Scene world = scene;
  const double z = transit_height(world, cfg);
  Pose hand = bare(hand_of(world).pose);
  Pose last_pre = hand;
  std::string held = world.holding ? world.holding->object : std::string();
  std::string released;
  std::vector<MotionCommand> out;

  auto find = [&](const std::string& id) -> PhysicalObject& {
    PhysicalObject* o = world.find(id);
    if (!o) throw DecomposeError("plan refers to '" + id + "', which is not in the scene");
    return *o;
  };

  for (std::size_t step = 0; step < plan.size(); ++step) {
    const GroundAction& a = plan[step];
    try {
      if (a.schema == "pick" || a.schema == "pick-space") {
        if (!held.empty()) throw DecomposeError("pick while holding '" + held + "'");
        const std::string& o1 = arg(a, "?o1");
        PhysicalObject& obj = find(o1);
        const GraspConfig g = grasp_of(a);
        const Pose obj_pose = bare(obj.pose);
        const Pose target = hand_world_pose(obj_pose, grasp_hand_pose(g, obj.size));
        const Pose pre(pregrasp_position(obj_pose, g, obj.size), target.orientation);

        MotionCommand move;
        move.kind = CommandKind::move_free;
        move.plan_step = step;
        move.target = target;
        move.segments = plan_motion(hand, last_pre, pre, target, z, cfg);
        move.approach_target = o1;
        move.departure_object = released;
        out.push_back(std::move(move));

        MotionCommand grasp;
        grasp.kind = CommandKind::grasp;
        grasp.plan_step = step;
        grasp.object = o1;
        grasp.support = arg(a, "?o2");
        grasp.grasp = g;
        grasp.target = target;
        out.push_back(std::move(grasp));

        hand = target;
        last_pre = pre;
        held = o1;
        released.clear();
      } else if (a.schema == "place" || a.schema == "place-space") {
        const std::string& o1 = arg(a, "?o1");
        if (held != o1) throw DecomposeError("place of '" + o1 + "' while not holding it");
        PhysicalObject& obj = find(o1);
        const PhysicalObject& sup = find(arg(a, "?o2"));
        const GraspConfig g = grasp_of(a);
        PlacementConfig pc{Part::in, Part::in};
        if (a.schema == "place") pc = {part_arg(a, "?o1-o2"), part_arg(a, "?o2-o1")};
        if (!pc.valid()) throw DecomposeError("illegal placement " + pc.str() + " in " + a.str());
        const Pose sup_pose = bare(sup.pose);
        const Pose obj_target =
            object_world_from_support(sup_pose, placement_pose(pc, obj.size, sup.size));
        const Pose hand_in_obj = grasp_hand_pose(g, obj.size);
        const Pose target = hand_world_pose(obj_target, hand_in_obj);
        const Pose obj_pre(preplace_position(sup_pose, associated_space_offset(pc.support, sup.size)),
                           obj_target.orientation);
        const Pose pre = hand_world_pose(obj_pre, hand_in_obj);

        MotionCommand move;
        move.kind = CommandKind::move_holding;
        move.plan_step = step;
        move.object = o1;
        move.target = target;
        move.segments = plan_motion(hand, last_pre, pre, target, z, cfg);
        move.approach_target = sup.id;
        out.push_back(std::move(move));

        MotionCommand rel;
        rel.kind = CommandKind::release;
        rel.plan_step = step;
        rel.object = o1;
        rel.support = sup.id;
        rel.grasp = g;
        rel.placement = pc;
        rel.target = target;
        out.push_back(std::move(rel));

        set_pose(obj, obj_target);
        hand = target;
        last_pre = pre;
        held.clear();
        released = o1;
      } else {
        MotionCommand op;
        op.kind = CommandKind::operate;
        op.plan_step = step;
        op.action = a.str();
        op.add = a.add;
        op.del = a.del;
        out.push_back(std::move(op));
      }
    } catch (const IllegalGrasp& e) {
      throw DecomposeError("step " + std::to_string(step) + ": " + e.what());
    } catch (const IllegalPlacement& e) {
      throw DecomposeError("step " + std::to_string(step) + ": " + e.what());
    }
  }
  return out;
}

ExecutionReport simulate(const std::vector<MotionCommand>& commands, const Scene& scene,
                         const std::vector<Atom>& goal, const ExecutorConfig& cfg) {
  ExecutionReport rep;
  rep.final_scene = scene;
  Scene& world = rep.final_scene;
  std::optional<std::pair<std::string, Pose>> attached;  // object, pose in hand frame

  auto fail = [&](std::size_t i, const std::string& msg) {
    rep.error = "command " + std::to_string(i) + " (" + std::string(to_string(commands[i].kind)) +
                "): " + msg;
  };

  try {
    PhysicalObject& hand = hand_of(world);
    if (world.holding) {
      const Pose obj = bare(world.get(world.holding->object).pose);
      attached = {{world.holding->object, compose(invert(bare(hand.pose)), obj)}};
    }

    for (std::size_t ci = 0; ci < commands.size() && rep.error.empty(); ++ci) {
      const MotionCommand& c = commands[ci];
      TraceStep ts;
      ts.command = ci;
      ts.kind = c.kind;
      ts.object = c.object;

      switch (c.kind) {
        case CommandKind::move_free:
        case CommandKind::move_holding: {
          if (c.kind == CommandKind::move_free && attached) {
            fail(ci, "free motion while holding '" + attached->first + "'");
            break;
          }
          if (c.kind == CommandKind::move_holding && (!attached || attached->first != c.object)) {
            fail(ci, "not holding '" + c.object + "'");
            break;
          }
          if (c.segments.empty() || c.segments.front().samples.empty()) {
            fail(ci, "motion without samples");
            break;
          }
          if (!poses_close(bare(c.segments.front().samples.front()), bare(hand.pose), 1e-9)) {
            fail(ci, "motion does not start at the current hand pose");
            break;
          }
          PhysicalObject* held = attached ? world.find(attached->first) : nullptr;
          const std::size_t total = c.sample_count();
          const double last = static_cast<double>(total > 0 ? total - 1 : 0);
          std::set<std::pair<std::string, std::string>> reported;
          std::size_t k = 0;
          for (const auto& seg : c.segments)
            for (const auto& sample : seg.samples) {
              set_pose(hand, sample);
              ts.hand.push_back(bare(sample));
              std::vector<std::pair<std::string, OrientedBox>> moving = {
                  {hand.id, OrientedBox{bare(sample), cfg.hand.size}}};
              if (held) {
                const Pose obj = compose(bare(sample), attached->second);
                set_pose(*held, obj);
                ts.held.push_back(obj);
                const Pose back = compose(invert(bare(sample)), obj);
                rep.max_attachment_error =
                    std::max({rep.max_attachment_error,
                              (back.position - attached->second.position).cwiseAbs().maxCoeff(),
                              (back.rotation() - attached->second.rotation()).cwiseAbs().maxCoeff()});
                moving.push_back({held->id, OrientedBox{obj, held->size}});
              }
              const bool in_approach = static_cast<double>(k) >= (1.0 - cfg.whitelist_fraction) * last;
              const bool in_departure = static_cast<double>(k) <= cfg.whitelist_fraction * last;
              for (const auto& other : world.objects) {
                if (!is_solid_kind(other.kind) && other.kind != ObjectKind::fixture) continue;
                if (held && other.id == held->id) continue;
                if (in_approach && other.id == c.approach_target) continue;
                if (in_departure && other.id == c.departure_object) continue;
                const OrientedBox ob{bare(other.pose), other.size};
                for (const auto& [mid, mb] : moving) {
                  if (!obb_overlap(mb, ob, cfg.allowed_penetration)) continue;
                  if (reported.insert({mid, other.id}).second) {
                    rep.collisions.push_back({ci, k, mid, other.id});
                    log_warn("collision: " + mid + " with " + other.id + " in command " +
                             std::to_string(ci) + " sample " + std::to_string(k));
                  }
                }
              }
              ++k;
            }
          break;
        }
        case CommandKind::grasp: {
          if (attached) {
            fail(ci, "grasp while holding '" + attached->first + "'");
            break;
          }
          PhysicalObject* obj = world.find(c.object);
          if (!obj) {
            fail(ci, "unknown object '" + c.object + "'");
            break;
          }
          if (!poses_close(bare(hand.pose), bare(c.target), 1e-9)) {
            fail(ci, "hand is not at the grasp pose");
            break;
          }
          attached = {{c.object, compose(invert(bare(hand.pose)), bare(obj->pose))}};
          world.holding = HoldState{c.object, c.grasp};
          ts.hand.push_back(bare(hand.pose));
          break;
        }
        case CommandKind::release: {
          if (!attached || attached->first != c.object) {
            fail(ci, "release of '" + c.object + "' while not holding it");
            break;
          }
          PhysicalObject* obj = world.find(c.object);
          const PhysicalObject* sup = world.find(c.support);
          if (!obj || !sup) {
            fail(ci, "unknown object or support");
            break;
          }
          set_pose(*obj, object_world_from_support(
                             bare(sup->pose), placement_pose(c.placement, obj->size, sup->size)));
          attached.reset();
          world.holding.reset();
          ts.hand.push_back(bare(hand.pose));
          ts.held.push_back(bare(obj->pose));
          break;
        }
        case CommandKind::operate: {
          for (const auto& d : c.del) std::erase(world.facts, d);
          for (const auto& a : c.add)
            if (std::find(world.facts.begin(), world.facts.end(), a) == world.facts.end())
              world.facts.push_back(a);
          ts.object = c.action;
          break;
        }
      }
      rep.trace.push_back(std::move(ts));
    }

    if (rep.error.empty()) {
      const SymbolicState final_state = perceive(world);
      for (const auto& g : goal)
        if (!final_state.count(g)) rep.missing_goals.push_back(g);
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.success = rep.error.empty() && rep.collisions.empty() && rep.missing_goals.empty();
  return rep;
}

}  // namespace utamp
