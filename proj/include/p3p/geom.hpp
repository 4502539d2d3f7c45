#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Core>

namespace p3p {

using Vec3 = Eigen::Vector3d;

/// Three control points with a = |BC|, b = |AC|, c = |AB|.
///
/// Vertices are stored in a canonical embedding: A at the origin, B on the
/// +x axis and C in the z = 0 plane with positive y. All geometric queries in
/// this library assume that frame.
struct ControlTriangle {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double angleA = 0.0;
  double angleB = 0.0;
  double angleC = 0.0;
  Vec3 A = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  Vec3 C = Vec3::Zero();

  double diameter() const;
  double circumradius() const;
  Vec3 circumcenter() const;
  double mean_side() const { return (a + b + c) / 3.0; }
  bool is_acute() const;

  const Vec3& vertex(int index) const;
  double angle(int index) const;
};

/// Angles subtended at the optical center: alpha over BC, beta over AC,
/// gamma over AB.
struct ViewAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator[](int index) const;
  /// Trihedral inequalities, i.e. whether some off-plane point can see the
  /// control points under these angles.
  bool realizable() const;
};

enum class ToroidLabel { TA, TpiA, TB, TpiB, TC, TpiC, Custom };

std::string_view to_string(ToroidLabel label);
/// Short column/field key, e.g. "TA", "TpiA".
std::string_view short_name(ToroidLabel label);

/// Spindle torus swept by the circular arc that sees the chord under
/// `inscribedAngle`. `referenceDir` is the unit direction, perpendicular to
/// the chord, that defines the psi = 0 half-plane of the parameterization.
struct ToroidSpec {
  Vec3 chordStart = Vec3::Zero();
  Vec3 chordEnd = Vec3::Zero();
  double inscribedAngle = 0.0;
  ToroidLabel label = ToroidLabel::Custom;
  Vec3 referenceDir = Vec3::UnitY();
};

ToroidSpec make_toroid(const Vec3& chordStart, const Vec3& chordEnd, double inscribedAngle,
                       std::optional<Vec3> referenceDir = std::nullopt);

/// The six toroids in label order TA, TpiA, TB, TpiB, TC, TpiC.
std::array<ToroidSpec, 6> six_toroids(const ControlTriangle& tri);
ToroidSpec toroid(const ControlTriangle& tri, ToroidLabel label);

struct CircumsphereSpec {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

enum class RegionStatus { Inside, OnBoundary, Outside };
std::string_view to_string(RegionStatus status);

struct ToroidStatus {
  ToroidLabel label = ToroidLabel::Custom;
  RegionStatus status = RegionStatus::Outside;
  double excess = 0.0;  // subtended - inscribed, radians
};

struct RegionReport {
  std::array<ToroidStatus, 6> perToroid{};
  bool outsideUnion = false;
  bool onOuterSurface = false;
  bool insideIntersectionOfAC = false;

  const ToroidStatus& operator[](ToroidLabel label) const;
  /// Inside (strictly) either toroid of the pair built on the edge opposite
  /// `vertex` (0 = A, 1 = B, 2 = C).
  bool inside_pair_union(int vertex) const;
  bool outside_pair_union(int vertex) const;
};

inline constexpr double kDefaultEpsAngle = 1e-9;

ControlTriangle triangle_from_sides(double a, double b, double c);

/// Angle at `o` between the rays towards `p` and `q`, in [0, pi].
double subtended_angle(const Vec3& o, const Vec3& p, const Vec3& q);

ViewAngles subtended_angles(const Vec3& o, const ControlTriangle& tri);

double toroid_signed_excess(const Vec3& p, const ToroidSpec& t);

RegionReport classify_region(const Vec3& o, const ControlTriangle& tri,
                             double epsAngle = kDefaultEpsAngle);

CircumsphereSpec circumsphere(const ControlTriangle& tri);

/// Two circular cones sharing an apex, half-angles beta0 and gamma0, whose
/// axes meet at angleA, intersect iff
/// cos(beta0 + gamma0) <= cos(angleA) <= cos(beta0 - gamma0).
/// `slack` widens both bounds so that tangent rays count as intersecting
/// under rounding.
bool cones_intersect(double beta0, double gamma0, double angleA, double slack = 1e-12);

/// The same condition written in distances from a point M to the vertices:
/// returns the left-hand side of the quartic-in-distances form (<= 0 iff the
/// cones at A with half-angles pi - angle(AMC), pi - angle(AMB) intersect)
/// together with a magnitude for scaling tolerances.
struct ConeDistanceForm {
  double value = 0.0;
  double scale = 0.0;
};
ConeDistanceForm cone_condition_from_distances(const Vec3& m, const ControlTriangle& tri);

}  // namespace p3p
