#include "p3p/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "p3p/error.hpp"

namespace p3p {

namespace {

constexpr double kPi = std::numbers::pi;

// Kahan's cancellation-free Heron formula; sides in any order.
double triangle_area(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

Vec3 default_reference(const Vec3& e) {
  Vec3 ref = Vec3::UnitZ().cross(e);
  if (ref.norm() < 1e-6) ref = Vec3::UnitX().cross(e);
  return ref.normalized();
}

Vec3 reference_towards(const Vec3& p, const Vec3& q, const Vec3& apex) {
  const Vec3 e = (q - p).normalized();
  Vec3 d = apex - p;
  d -= d.dot(e) * e;
  return d.normalized();
}

RegionStatus status_of(double excess, double eps) {
  if (excess > eps) return RegionStatus::Inside;
  if (excess < -eps) return RegionStatus::Outside;
  return RegionStatus::OnBoundary;
}

void check_chord_distance(const Vec3& p, const Vec3& s, const Vec3& e, ToroidLabel label) {
  const Vec3 chord = e - s;
  const double len = chord.norm();
  const double dist = (p - s).cross(chord).norm() / len;
  if (dist < 1e-12 * len) {
    std::ostringstream os;
    os << "point lies on the rotation axis of toroid " << to_string(label);
    throw Error(ErrorKind::OnChordLine, os.str());
  }
}

}  // namespace

double ControlTriangle::diameter() const { return std::max({a, b, c}); }

double ControlTriangle::circumradius() const { return a * b * c / (4.0 * triangle_area(a, b, c)); }

Vec3 ControlTriangle::circumcenter() const {
  const double x = 0.5 * c;
  const double y = (C.x() * C.x() + C.y() * C.y() - c * C.x()) / (2.0 * C.y());
  return {x, y, 0.0};
}

bool ControlTriangle::is_acute() const {
  return angleA < kPi / 2 && angleB < kPi / 2 && angleC < kPi / 2;
}

const Vec3& ControlTriangle::vertex(int index) const {
  switch (index) {
    case 0: return A;
    case 1: return B;
    case 2: return C;
  }
  throw Error(ErrorKind::DomainError, "vertex index must be 0, 1 or 2");
}

double ControlTriangle::angle(int index) const {
  switch (index) {
    case 0: return angleA;
    case 1: return angleB;
    case 2: return angleC;
  }
  throw Error(ErrorKind::DomainError, "angle index must be 0, 1 or 2");
}

double ViewAngles::operator[](int index) const {
  switch (index) {
    case 0: return alpha;
    case 1: return beta;
    case 2: return gamma;
  }
  throw Error(ErrorKind::DomainError, "view angle index must be 0, 1 or 2");
}

bool ViewAngles::realizable() const {
  return alpha > 0 && beta > 0 && gamma > 0 && alpha < beta + gamma && beta < alpha + gamma &&
         gamma < alpha + beta && alpha + beta + gamma < 2.0 * kPi;
}

std::string_view to_string(ToroidLabel label) {
  switch (label) {
    case ToroidLabel::TA: return "T_A";
    case ToroidLabel::TpiA: return "T_pi-A";
    case ToroidLabel::TB: return "T_B";
    case ToroidLabel::TpiB: return "T_pi-B";
    case ToroidLabel::TC: return "T_C";
    case ToroidLabel::TpiC: return "T_pi-C";
    case ToroidLabel::Custom: return "T_custom";
  }
  return "?";
}

std::string_view short_name(ToroidLabel label) {
  switch (label) {
    case ToroidLabel::TA: return "TA";
    case ToroidLabel::TpiA: return "TpiA";
    case ToroidLabel::TB: return "TB";
    case ToroidLabel::TpiB: return "TpiB";
    case ToroidLabel::TC: return "TC";
    case ToroidLabel::TpiC: return "TpiC";
    case ToroidLabel::Custom: return "Tcustom";
  }
  return "?";
}

std::string_view to_string(RegionStatus status) {
  switch (status) {
    case RegionStatus::Inside: return "Inside";
    case RegionStatus::OnBoundary: return "OnBoundary";
    case RegionStatus::Outside: return "Outside";
  }
  return "?";
}

ToroidSpec make_toroid(const Vec3& chordStart, const Vec3& chordEnd, double inscribedAngle,
                       std::optional<Vec3> referenceDir) {
  if ((chordEnd - chordStart).norm() == 0.0) {
    throw Error(ErrorKind::DomainError, "toroid chord endpoints coincide");
  }
  if (!(inscribedAngle > 0.0 && inscribedAngle < kPi)) {
    throw Error(ErrorKind::DomainError, "inscribed angle must lie in (0, pi)");
  }
  ToroidSpec t;
  t.chordStart = chordStart;
  t.chordEnd = chordEnd;
  t.inscribedAngle = inscribedAngle;
  const Vec3 e = (chordEnd - chordStart).normalized();
  if (referenceDir) {
    Vec3 r = *referenceDir - referenceDir->dot(e) * e;
    if (r.norm() < 1e-12) throw Error(ErrorKind::DomainError, "reference direction parallel to chord");
    t.referenceDir = r.normalized();
  } else {
    t.referenceDir = default_reference(e);
  }
  return t;
}

std::array<ToroidSpec, 6> six_toroids(const ControlTriangle& tri) {
  std::array<ToroidSpec, 6> out;
  const Vec3 refA = reference_towards(tri.B, tri.C, tri.A);
  const Vec3 refB = reference_towards(tri.A, tri.C, tri.B);
  const Vec3 refC = reference_towards(tri.A, tri.B, tri.C);
  out[0] = make_toroid(tri.B, tri.C, tri.angleA, refA);
  out[1] = make_toroid(tri.B, tri.C, kPi - tri.angleA, refA);
  out[2] = make_toroid(tri.A, tri.C, tri.angleB, refB);
  out[3] = make_toroid(tri.A, tri.C, kPi - tri.angleB, refB);
  out[4] = make_toroid(tri.A, tri.B, tri.angleC, refC);
  out[5] = make_toroid(tri.A, tri.B, kPi - tri.angleC, refC);
  constexpr std::array labels{ToroidLabel::TA, ToroidLabel::TpiA, ToroidLabel::TB,
                              ToroidLabel::TpiB, ToroidLabel::TC, ToroidLabel::TpiC};
  for (std::size_t i = 0; i < 6; ++i) out[i].label = labels[i];
  return out;
}

ToroidSpec toroid(const ControlTriangle& tri, ToroidLabel label) {
  if (label == ToroidLabel::Custom) {
    throw Error(ErrorKind::DomainError, "custom toroids are built with make_toroid");
  }
  return six_toroids(tri)[static_cast<std::size_t>(label)];
}

const ToroidStatus& RegionReport::operator[](ToroidLabel label) const {
  return perToroid.at(static_cast<std::size_t>(label));
}

bool RegionReport::inside_pair_union(int vertex) const {
  const auto i = static_cast<std::size_t>(2 * vertex);
  return perToroid.at(i).status == RegionStatus::Inside ||
         perToroid.at(i + 1).status == RegionStatus::Inside;
}

bool RegionReport::outside_pair_union(int vertex) const {
  const auto i = static_cast<std::size_t>(2 * vertex);
  return perToroid.at(i).status == RegionStatus::Outside &&
         perToroid.at(i + 1).status == RegionStatus::Outside;
}

ControlTriangle triangle_from_sides(double a, double b, double c) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) || a <= 0 || b <= 0 || c <= 0) {
    throw Error(ErrorKind::DegenerateTriangle, "side lengths must be finite and positive");
  }
  if (!(a < b + c && b < a + c && c < a + b)) {
    throw Error(ErrorKind::DegenerateTriangle, "side lengths violate the strict triangle inequality");
  }
  const double area = triangle_area(a, b, c);
  if (!(area > 0.0)) {
    throw Error(ErrorKind::DegenerateTriangle, "control points are collinear");
  }
  ControlTriangle t;
  t.a = a;
  t.b = b;
  t.c = c;
  // tan(angle) = 4 * area / (sum of adjacent squares - opposite square)
  t.angleA = std::atan2(4.0 * area, b * b + c * c - a * a);
  t.angleB = std::atan2(4.0 * area, a * a + c * c - b * b);
  t.angleC = std::atan2(4.0 * area, a * a + b * b - c * c);
  t.A = Vec3::Zero();
  t.B = Vec3(c, 0.0, 0.0);
  t.C = Vec3(b * std::cos(t.angleA), b * std::sin(t.angleA), 0.0);
  return t;
}

double subtended_angle(const Vec3& o, const Vec3& p, const Vec3& q) {
  const Vec3 u = p - o;
  const Vec3 w = q - o;
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

ViewAngles subtended_angles(const Vec3& o, const ControlTriangle& tri) {
  const double tol = 1e-12 * tri.diameter();
  for (int i = 0; i < 3; ++i) {
    if ((o - tri.vertex(i)).norm() < tol) {
      throw Error(ErrorKind::VertexCoincidence, "optical center coincides with a control point");
    }
  }
  return {subtended_angle(o, tri.B, tri.C), subtended_angle(o, tri.A, tri.C),
          subtended_angle(o, tri.A, tri.B)};
}

double toroid_signed_excess(const Vec3& p, const ToroidSpec& t) {
  check_chord_distance(p, t.chordStart, t.chordEnd, t.label);
  return subtended_angle(p, t.chordStart, t.chordEnd) - t.inscribedAngle;
}

RegionReport classify_region(const Vec3& o, const ControlTriangle& tri, double epsAngle) {
  if (!(epsAngle > 0.0)) throw Error(ErrorKind::DomainError, "epsAngle must be positive");
  const auto toroids = six_toroids(tri);
  RegionReport r;
  bool anyInside = false;
  bool anyBoundary = false;
  bool allOutside = true;
  for (std::size_t i = 0; i < 6; ++i) {
    const double excess = toroid_signed_excess(o, toroids[i]);
    const RegionStatus s = status_of(excess, epsAngle);
    r.perToroid[i] = {toroids[i].label, s, excess};
    anyInside |= s == RegionStatus::Inside;
    anyBoundary |= s == RegionStatus::OnBoundary;
    allOutside &= s == RegionStatus::Outside;
  }
  r.outsideUnion = allOutside;
  r.onOuterSurface = anyBoundary && !anyInside;
  r.insideIntersectionOfAC = r.inside_pair_union(0) && r.inside_pair_union(2);
  return r;
}

CircumsphereSpec circumsphere(const ControlTriangle& tri) {
  return {tri.circumcenter(), tri.circumradius()};
}

bool cones_intersect(double beta0, double gamma0, double angleA, double slack) {
  for (double x : {beta0, gamma0, angleA}) {
    if (!(x > 0.0 && x < kPi)) {
      throw Error(ErrorKind::DomainError, "cone half-angles and apex angle must lie in (0, pi)");
    }
  }
  const double cosA = std::cos(angleA);
  return std::cos(beta0 + gamma0) <= cosA + slack && cosA <= std::cos(beta0 - gamma0) + slack;
}

ConeDistanceForm cone_condition_from_distances(const Vec3& m, const ControlTriangle& tri) {
  const double ma2 = (m - tri.A).squaredNorm();
  const double mb2 = (m - tri.B).squaredNorm();
  const double mc2 = (m - tri.C).squaredNorm();
  const double mb = std::sqrt(mb2);
  const double mc = std::sqrt(mc2);
  const double x = ma2 + mc2 - tri.b * tri.b;
  const double y = ma2 + mb2 - tri.c * tri.c;
  const double sinA = std::sin(tri.angleA);
  const double cosA = std::cos(tri.angleA);
  const double t1 = mb2 * x * x;
  const double t2 = mc2 * y * y;
  const double t3 = 4.0 * sinA * sinA * ma2 * mb2 * mc2;
  const double t4 = 2.0 * mc * mb * x * y * cosA;
  return {t1 + t2 - t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

}  // namespace p3p
