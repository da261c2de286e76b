#include "utamp/report_io.hpp"

#include <json.hpp>

namespace utamp {

using nlohmann::json;

namespace {

json pose_row(const Pose& p) {
  return json::array({p.position.x(), p.position.y(), p.position.z(), p.orientation.roll,
                      p.orientation.pitch, p.orientation.yaw});
}

json atoms(const std::vector<Atom>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(a.str());
  return out;
}

}  // namespace

std::string report_to_json(const ExecutionReport& report) {
  json j;
  j["format"] = "utamp-report";
  j["version"] = 1;
  j["success"] = report.success;
  j["error"] = report.error;
  j["collisions"] = json::array();
  for (const auto& c : report.collisions)
    j["collisions"].push_back(
        {{"command", c.command}, {"sample", c.sample}, {"moving", c.moving}, {"other", c.other}});
  j["missing_goals"] = atoms(report.missing_goals);
  j["max_attachment_error"] = report.max_attachment_error;
  json objects = json::object();
  for (const auto& o : report.final_scene.objects) objects[o.id] = pose_row(o.pose);
  j["final_poses"] = objects;
  j["final_facts"] = atoms(report.final_scene.facts);
  return j.dump(2) + "\n";
}

std::string trace_to_json(const ExecutionReport& report) {
  json j;
  j["format"] = "utamp-trace";
  j["version"] = 1;
  j["steps"] = json::array();
  for (const auto& s : report.trace) {
    json step{{"command", s.command}, {"kind", std::string(to_string(s.kind))}, {"object", s.object}};
    step["hand"] = json::array();
    for (const auto& p : s.hand) step["hand"].push_back(pose_row(p));
    step["held"] = json::array();
    for (const auto& p : s.held) step["held"].push_back(pose_row(p));
    j["steps"].push_back(std::move(step));
  }
  return j.dump() + "\n";
}

}  // namespace utamp
