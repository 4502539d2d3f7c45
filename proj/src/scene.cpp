#include "p3p/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "p3p/error.hpp"

namespace p3p {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) invalid(where + ": missing field '" + key + "'");
  return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) invalid(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(where + "." + key + ": must be finite");
  return x;
}

Vec3 point(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array() || v.size() != 3) invalid(where + "." + key + ": expected [x, y, z]");
  Vec3 p;
  for (int i = 0; i < 3; ++i) {
    const json& c = v.at(static_cast<std::size_t>(i));
    if (!c.is_number()) invalid(where + "." + key + "[" + std::to_string(i) + "]: expected a number");
    p(i) = c.get<double>();
    if (!std::isfinite(p(i))) invalid(where + "." + key + "[" + std::to_string(i) + "]: must be finite");
  }
  return p;
}

std::string mode_of(const json& obj, const std::string& where) {
  if (!obj.is_object()) invalid(where + ": expected an object");
  const json& m = require(obj, "mode", where);
  if (!m.is_string()) invalid(where + ".mode: expected a string");
  return m.get<std::string>();
}

void parse_triangle(const json& t, Scene& s) {
  const std::string mode = mode_of(t, "triangle");
  if (mode == "sides") {
    s.tri = triangle_from_sides(number(t, "a", "triangle"), number(t, "b", "triangle"),
                                number(t, "c", "triangle"));
    s.frame = Frame{};
    return;
  }
  if (mode != "vertices") invalid("triangle.mode: expected \"sides\" or \"vertices\", got \"" + mode + "\"");
  const Vec3 A = point(t, "A", "triangle");
  const Vec3 B = point(t, "B", "triangle");
  const Vec3 C = point(t, "C", "triangle");
  s.tri = triangle_from_sides((C - B).norm(), (C - A).norm(), (B - A).norm());
  const Vec3 e1 = (B - A).normalized();
  Vec3 e2 = (C - A) - (C - A).dot(e1) * e1;
  e2.normalize();
  s.frame.rotation.col(0) = e1;
  s.frame.rotation.col(1) = e2;
  s.frame.rotation.col(2) = e1.cross(e2);
  s.frame.origin = A;
}

void parse_view(const json& v, Scene& s) {
  const std::string mode = mode_of(v, "view");
  if (mode == "center") {
    s.viewMode = ViewMode::Center;
    s.center = s.frame.to_canonical(point(v, "O", "view"));
    if (std::abs(s.center.z()) <= 1e-9 * s.tri.diameter()) {
      throw Error(ErrorKind::PlanarCenter,
                  "optical center lies on the control plane (within 1e-9 diameter)");
    }
    s.angles = subtended_angles(s.center, s.tri);
    return;
  }
  if (mode != "angles") invalid("view.mode: expected \"center\" or \"angles\", got \"" + mode + "\"");
  s.viewMode = ViewMode::Angles;
  const bool rad = v.contains("alpha_rad") || v.contains("beta_rad") || v.contains("gamma_rad");
  const bool deg = v.contains("alpha_deg") || v.contains("beta_deg") || v.contains("gamma_deg");
  if (rad && deg) invalid("view: mixes *_rad and *_deg fields; use exactly one unit system");
  if (!rad && !deg) invalid("view: missing alpha_rad, beta_rad, gamma_rad");
  const std::string suffix = rad ? "_rad" : "_deg";
  const double scale = rad ? 1.0 : std::numbers::pi / 180.0;
  s.angles = {scale * number(v, "alpha" + suffix, "view"), scale * number(v, "beta" + suffix, "view"),
              scale * number(v, "gamma" + suffix, "view")};
  for (double x : {s.angles.alpha, s.angles.beta, s.angles.gamma}) {
    if (!(x > 0.0 && x < std::numbers::pi)) {
      throw Error(ErrorKind::DomainError, "view angles must lie in (0, pi)");
    }
  }
}

}  // namespace

Scene parse_scene(const json& doc) {
  if (!doc.is_object()) invalid("scene: expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "triangle" && key != "view" && key != "path") invalid("scene: unknown field '" + key + "'");
  }
  Scene s;
  parse_triangle(require(doc, "triangle", "scene"), s);
  if (doc.contains("view")) parse_view(doc.at("view"), s);
  if (doc.contains("path")) {
    const json& p = doc.at("path");
    if (!p.is_object()) invalid("path: expected an object");
    s.path = std::make_pair(s.frame.to_canonical(point(p, "start", "path")),
                            s.frame.to_canonical(point(p, "end", "path")));
  }
  return s;
}

Scene parse_scene_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return parse_scene(doc);
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str());
}

}  // namespace p3p
