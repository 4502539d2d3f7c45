#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "p3p/geom.hpp"

namespace p3p {

/// Rigid map from the canonical triangle frame (A at the origin, B on +x,
/// C in the upper half of the xy-plane) to the frame the scene was given in.
struct Frame {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 origin = Vec3::Zero();

  Vec3 to_world(const Vec3& canonical) const { return origin + rotation * canonical; }
  Vec3 to_canonical(const Vec3& world) const { return rotation.transpose() * (world - origin); }
};

enum class ViewMode { Center, Angles };

struct Scene {
  ControlTriangle tri;
  Frame frame;
  std::optional<ViewMode> viewMode;
  Vec3 center = Vec3::Zero();  // canonical frame; set in Center mode
  ViewAngles angles;           // given, or subtended by the center
  std::optional<std::pair<Vec3, Vec3>> path;  // canonical frame

  bool has_view() const { return viewMode.has_value(); }
};

/// Parses and validates a scene document. Throws Error with kind
/// InvalidInput (schema), DegenerateTriangle, DomainError (angles outside
/// (0, pi)) or PlanarCenter (center within 1e-9 diameter of the plane).
Scene parse_scene(const nlohmann::json& doc);
Scene parse_scene_text(const std::string& text);
Scene load_scene(const std::string& path);

}  // namespace p3p
