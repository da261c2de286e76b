#include "utamp/perception.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace utamp {

std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::solid: return "solid";
    case ObjectKind::surface: return "surface";
    case ObjectKind::fixture: return "fixture";
    case ObjectKind::space: return "space";
    case ObjectKind::hand: return "hand";
  }
  return "?";
}

std::optional<ObjectKind> parse_object_kind(std::string_view s) {
  for (auto k : {ObjectKind::solid, ObjectKind::surface, ObjectKind::fixture, ObjectKind::space,
                 ObjectKind::hand})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

const PhysicalObject* Scene::find(const std::string& id) const {
  for (const auto* list : {&objects, &spaces})
    for (const auto& o : *list)
      if (o.id == id) return &o;
  return nullptr;
}

PhysicalObject* Scene::find(const std::string& id) {
  return const_cast<PhysicalObject*>(static_cast<const Scene*>(this)->find(id));
}

const PhysicalObject& Scene::get(const std::string& id) const {
  const PhysicalObject* o = find(id);
  if (!o) throw SceneError("no object '" + id + "' in scene");
  return *o;
}

PhysicalObject& Scene::get(const std::string& id) {
  return const_cast<PhysicalObject&>(static_cast<const Scene*>(this)->get(id));
}

const PhysicalObject* Scene::hand() const {
  for (const auto& o : objects)
    if (o.kind == ObjectKind::hand) return &o;
  return nullptr;
}

void check_scene(const Scene& scene) {
  std::set<std::string> ids;
  int hands = 0;
  auto check = [&](const PhysicalObject& o) {
    if (o.id.empty()) throw SceneError("object with empty id");
    if (o.id == kAir || o.id == kHand)
      if (o.kind != ObjectKind::hand || o.id != kHand)
        throw SceneError("reserved id '" + o.id + "'");
    if (!ids.insert(o.id).second) throw SceneError("duplicate id '" + o.id + "'");
    if (!o.size.positive()) throw SceneError("non-positive size for '" + o.id + "'");
    if (o.kind == ObjectKind::hand) ++hands;
  };
  for (const auto& o : scene.objects) {
    if (o.kind == ObjectKind::space) throw SceneError("space '" + o.id + "' listed as object");
    check(o);
  }
  for (const auto& s : scene.spaces) {
    if (s.kind != ObjectKind::space) throw SceneError("'" + s.id + "' listed as space");
    check(s);
  }
  if (hands != 1) throw SceneError("scene must contain exactly one hand");
  if (std::abs(scene.reference_normal.norm() - 1.0) > 1e-9)
    throw SceneError("reference normal must be unit length");
  if (scene.holding) {
    const PhysicalObject* held = scene.find(scene.holding->object);
    if (!held || held->kind != ObjectKind::solid)
      throw SceneError("held object '" + scene.holding->object + "' is not a solid");
    if (!scene.holding->grasp.legal()) throw SceneError("held with an illegal grasp");
  }
}

AssociatedSpace associated_space(const PhysicalObject& obj, Part part) {
  AssociatedSpace s;
  s.owner = obj.id;
  s.part = part;
  s.size = obj.size;
  s.pose = obj.pose;
  s.pose.position = obj.pose.transform(associated_space_offset(part, obj.size));
  s.pose.id.clear();
  return s;
}

double force_alignment_threshold() { return std::cos(5.0 * kPi / 180.0); }

namespace {

bool centroid_in(const AssociatedSpace& s, const PhysicalObject& o) {
  return obb_contains_point(s.pose, s.size, o.pose.position);
}

std::string name(Part p) { return std::string(to_string(p)); }

}  // namespace

std::vector<std::string> absorbed_solids(const Scene& scene) {
  std::vector<std::string> out;
  for (const auto& o : scene.objects) {
    if (!is_solid_kind(o.kind)) continue;
    if (scene.holding && scene.holding->object == o.id) continue;
    for (const auto& sp : scene.spaces)
      if (obb_contains_point(sp.pose, sp.size, o.pose.position)) {
        out.push_back(o.id);
        break;
      }
  }
  return out;
}

SymbolicState perceive(const Scene& scene) {
  check_scene(scene);
  SymbolicState s;
  const std::string held = scene.holding ? scene.holding->object : std::string();
  const auto absorbed_list = absorbed_solids(scene);
  const std::set<std::string> absorbed(absorbed_list.begin(), absorbed_list.end());

  // Free solids: not absorbed and not in the hand.
  std::vector<const PhysicalObject*> free_solids;
  for (const auto& o : scene.objects)
    if (is_solid_kind(o.kind) && o.id != held && !absorbed.count(o.id))
      free_solids.push_back(&o);

  auto occupant = [](const AssociatedSpace& sp, const std::vector<const PhysicalObject*>& cands,
                     const std::string& self) -> std::string {
    std::vector<std::string> hits;
    for (const auto* c : cands)
      if (c->id != self && centroid_in(sp, *c)) hits.push_back(c->id);
    if (hits.size() > 1) {
      std::sort(hits.begin(), hits.end());
      throw AmbiguousOccupancy("space " + name(sp.part) + " of '" + sp.owner + "' holds both '" +
                               hits[0] + "' and '" + hits[1] + "'");
    }
    return hits.empty() ? std::string(kAir) : hits.front();
  };

  auto add_base = [&](const PhysicalObject& o) {
    Part best = kSides[0];
    double best_d = 0;
    for (std::size_t i = 0; i < kSides.size(); ++i) {
      const Vec3 c = o.pose.transform(part_centroid(kSides[i], o.size));
      const double d = (c - scene.robot_base.position).norm();
      if (i == 0 || d < best_d) {
        best = kSides[i];
        best_d = d;
      }
    }
    s.insert({"base", {o.id, name(best)}});
  };

  const double threshold = force_alignment_threshold();
  for (const auto* o : free_solids) {
    for (Part p : kSides)
      s.insert({"oc", {name(p), o->id, occupant(associated_space(*o, p), free_solids, o->id)}});
    add_base(*o);
    const RotMatrix r = o->pose.rotation();
    for (Part p : kSides)
      if ((r * outward_normal(p)).dot(scene.reference_normal) > threshold)
        s.insert({"force", {o->id, name(p)}});
  }

  std::vector<const PhysicalObject*> spaces;
  for (const auto& sp : scene.spaces) spaces.push_back(&sp);
  std::vector<const PhysicalObject*> contents;
  for (const auto& o : scene.objects)
    if (is_solid_kind(o.kind) && o.id != held) contents.push_back(&o);
  for (const auto* sp : spaces) {
    for (Part p : kSides)
      s.insert({"oc", {name(p), sp->id, occupant(associated_space(*sp, p), spaces, sp->id)}});
    s.insert({"oc", {"in", sp->id, occupant(associated_space(*sp, Part::in), contents, sp->id)}});
    add_base(*sp);
    s.insert({"force", {sp->id, "in"}});
  }

  if (scene.holding) {
    const GraspConfig& g = scene.holding->grasp;
    s.insert({"oc", {"in", kHand, held}});
    for (Part p : kSides) {
      const bool contact = p == g.palm || p == g.f1 || p == g.f2;
      s.insert({"oc", {name(p), held, contact ? std::string(kHand) : std::string(kAir)}});
    }
  } else {
    s.insert({"oc", {"in", kHand, kAir}});
  }

  for (const auto& f : scene.facts) s.insert(f);
  return s;
}

std::vector<TabletopPart> generate_table_parts(const Scene& scene, int requested,
                                               const TablePartOptions& opts) {
  if (requested < 0) throw std::invalid_argument("requested part count must be non-negative");
  const PhysicalObject* table = scene.find(opts.table_id);
  if (!table) throw SceneError("no table '" + opts.table_id + "' in scene");
  const RotMatrix tr = table->pose.rotation();
  const Vec3 top_normal = tr * Vec3::UnitZ();
  const Vec3 top_center = table->pose.transform(part_centroid(Part::on, table->size));
  const auto absorbed_list = absorbed_solids(scene);
  const std::set<std::string> absorbed(absorbed_list.begin(), absorbed_list.end());
  const std::string held = scene.holding ? scene.holding->object : std::string();

  auto make_part = [&](const Vec3& above, double fx, double fy) {
    TabletopPart p;
    // Project onto the top surface and sink by half the pad depth.
    const Vec3 on_top = above - top_normal * top_normal.dot(above - top_center);
    p.pose = Pose(on_top - top_normal * (opts.depth / 2), table->pose.orientation);
    p.size = {fx, fy, opts.depth};
    return p;
  };

  std::vector<TabletopPart> parts;
  std::vector<const PhysicalObject*> movable;
  double cell = 0;
  for (const auto& o : scene.objects) {
    if (o.kind != ObjectKind::solid || o.id == held || absorbed.count(o.id)) continue;
    // Resting on the top: bottom face on the table surface and centre over it.
    const Vec3 local = tr.transpose() * (o.pose.position - table->pose.position);
    const double bottom = local.z() - o.size.dz / 2;
    const bool over = std::abs(local.x()) <= table->size.dx / 2 &&
                      std::abs(local.y()) <= table->size.dy / 2;
    if (!over || std::abs(bottom - table->size.dz / 2) > 1e-6) continue;
    movable.push_back(&o);
    cell = std::max({cell, o.size.dx, o.size.dy});
  }
  for (const auto* o : movable) parts.push_back(make_part(o->pose.position, o->size.dx, o->size.dy));

  if (requested > 0) {
    if (cell == 0) {
      for (const auto& o : scene.objects)
        if (o.kind == ObjectKind::solid) cell = std::max({cell, o.size.dx, o.size.dy});
    }
    if (cell == 0) throw InsufficientFreeSpace("no solid to size free cells");
    cell *= 1.1;
    const int nx = static_cast<int>(std::floor(table->size.dx / cell + 1e-9));
    const int ny = static_cast<int>(std::floor(table->size.dy / cell + 1e-9));
    int found = 0;
    for (int iy = 0; iy < ny && found < requested; ++iy) {
      for (int ix = 0; ix < nx && found < requested; ++ix) {
        const Vec3 local(-table->size.dx / 2 + cell * (ix + 0.5),
                         -table->size.dy / 2 + cell * (iy + 0.5), table->size.dz / 2 + cell / 2);
        PhysicalObject probe;
        probe.id = "probe";
        probe.pose = Pose(table->pose.transform(local), table->pose.orientation);
        probe.size = {cell, cell, cell};
        bool empty = true;
        for (const auto& o : scene.objects)
          if (is_solid_kind(o.kind) &&
              obb_overlap(OrientedBox{probe.pose, probe.size}, OrientedBox{o.pose, o.size}, 1e-9))
            empty = false;
        for (const auto& sp : scene.spaces)
          if (obb_overlap(OrientedBox{probe.pose, probe.size}, OrientedBox{sp.pose, sp.size}, 1e-9))
            empty = false;
        for (const auto& p : parts)
          if (obb_overlap(OrientedBox{probe.pose, probe.size}, OrientedBox{p.pose, p.size}, 1e-9))
            empty = false;
        if (!empty) continue;
        parts.push_back(make_part(probe.pose.position, cell, cell));
        ++found;
      }
    }
    if (found < requested)
      throw InsufficientFreeSpace("only " + std::to_string(found) + " free table cells, " +
                                  std::to_string(requested) + " requested");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    parts[i].id = opts.prefix + std::to_string(i + 1);
    parts[i].pose.frame = kWorldFrame;
    parts[i].pose.id = parts[i].id;
  }
  return parts;
}

void add_table_parts(Scene& scene, const std::vector<TabletopPart>& parts) {
  for (const auto& p : parts) scene.objects.push_back({p.id, ObjectKind::surface, p.pose, p.size});
}

}  // namespace utamp
