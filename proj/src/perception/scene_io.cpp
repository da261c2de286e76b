#include "utamp/scene_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace utamp {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw SceneFormatError(std::string(what) + ": expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json pose_json(const Pose& p) {
  return {{"position", vec_json(p.position)},
          {"rpy", json::array({p.orientation.roll, p.orientation.pitch, p.orientation.yaw})}};
}

Pose pose_from(const json& j, const char* what) {
  Pose p;
  p.position = vec_from(j.at("position"), what);
  const Vec3 w = j.contains("rpy") ? vec_from(j.at("rpy"), what) : Vec3::Zero();
  p.orientation = {w.x(), w.y(), w.z()};
  p.frame = kWorldFrame;
  return p;
}

json object_json(const PhysicalObject& o) {
  json j = pose_json(o.pose);
  j["id"] = o.id;
  j["kind"] = std::string(to_string(o.kind));
  j["size"] = json::array({o.size.dx, o.size.dy, o.size.dz});
  return j;
}

PhysicalObject object_from(const json& j) {
  PhysicalObject o;
  o.id = j.at("id").get<std::string>();
  const auto kind = parse_object_kind(j.at("kind").get<std::string>());
  if (!kind) throw SceneFormatError("object '" + o.id + "': unknown kind");
  o.kind = *kind;
  o.pose = pose_from(j, o.id.c_str());
  o.pose.id = o.id;
  const Vec3 s = vec_from(j.at("size"), o.id.c_str());
  o.size = {s.x(), s.y(), s.z()};
  return o;
}

Part part_from(const json& j) {
  const auto p = parse_part(j.get<std::string>());
  if (!p) throw SceneFormatError("unknown part '" + j.get<std::string>() + "'");
  return *p;
}

}  // namespace

Scene scene_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneFormatError(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "utamp-scene")
      throw SceneFormatError("missing \"format\": \"utamp-scene\" header");
    if (j.value("version", 0) != kSceneFormatVersion)
      throw SceneFormatError("unsupported scene version");
    Scene s;
    for (const auto& o : j.at("objects")) s.objects.push_back(object_from(o));
    if (j.contains("spaces"))
      for (const auto& o : j.at("spaces")) s.spaces.push_back(object_from(o));
    s.robot_base = pose_from(j.at("robot_base"), "robot_base");
    if (j.contains("reference_normal"))
      s.reference_normal = vec_from(j.at("reference_normal"), "reference_normal");
    if (j.contains("holding") && !j.at("holding").is_null()) {
      const json& h = j.at("holding");
      const json& g = h.at("grasp");
      if (!g.is_array() || g.size() != 3) throw SceneFormatError("grasp: expected [palm, f1, f2]");
      s.holding = HoldState{h.at("object").get<std::string>(),
                            GraspConfig{part_from(g[0]), part_from(g[1]), part_from(g[2])}};
    }
    if (j.contains("facts"))
      for (const auto& f : j.at("facts")) {
        if (!f.is_array() || f.empty()) throw SceneFormatError("fact: expected [predicate, args...]");
        Atom a;
        a.predicate = f[0].get<std::string>();
        for (std::size_t i = 1; i < f.size(); ++i) a.args.push_back(f[i].get<std::string>());
        s.facts.push_back(std::move(a));
      }
    check_scene(s);
    return s;
  } catch (const json::exception& e) {
    throw SceneFormatError(std::string("malformed scene: ") + e.what());
  } catch (const SceneError& e) {
    throw SceneFormatError(std::string("invalid scene: ") + e.what());
  }
}

std::string scene_to_json(const Scene& scene) {
  json j;
  j["format"] = "utamp-scene";
  j["version"] = kSceneFormatVersion;
  j["robot_base"] = pose_json(scene.robot_base);
  j["reference_normal"] = vec_json(scene.reference_normal);
  j["objects"] = json::array();
  for (const auto& o : scene.objects) j["objects"].push_back(object_json(o));
  j["spaces"] = json::array();
  for (const auto& o : scene.spaces) j["spaces"].push_back(object_json(o));
  if (scene.holding) {
    const auto& g = scene.holding->grasp;
    j["holding"] = {{"object", scene.holding->object},
                    {"grasp", json::array({to_string(g.palm), to_string(g.f1), to_string(g.f2)})}};
  }
  j["facts"] = json::array();
  for (const auto& f : scene.facts) {
    json a = json::array({f.predicate});
    for (const auto& x : f.args) a.push_back(x);
    j["facts"].push_back(a);
  }
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Scene load_scene(const std::filesystem::path& path) { return scene_from_json(read_text_file(path)); }

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  write_text_file(path, scene_to_json(scene));
}

}  // namespace utamp
