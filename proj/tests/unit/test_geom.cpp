#include <cmath>
#include <numbers>

#include "doctest.h"

#include "p3p/error.hpp"
#include "p3p/geom.hpp"

using namespace p3p;
using std::numbers::pi;

namespace {
const double kAxisAngle = std::acos(0.625);
Vec3 axis_point() { return {0.5, std::sqrt(3.0) / 6.0, 1.0}; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidInput;
}
}  // namespace

TEST_CASE("equilateral triangle embedding") {
  const auto tri = triangle_from_sides(1, 1, 1);
  CHECK(tri.angleA == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK(tri.angleB == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK(tri.angleC == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK(tri.A.norm() == 0.0);
  CHECK((tri.B - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((tri.C - Vec3(0.5, std::sqrt(3.0) / 2, 0)).norm() < 1e-15);
}

TEST_CASE("3-4-5 has a right angle at C") {
  const auto tri = triangle_from_sides(3, 4, 5);
  CHECK(tri.angleC == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK_FALSE(tri.is_acute());
  CHECK(std::abs((tri.B - tri.C).norm() - 3) < 1e-14);
  CHECK(std::abs((tri.A - tri.C).norm() - 4) < 1e-14);
}

TEST_CASE("degenerate and invalid sides") {
  CHECK(kind_of([] { triangle_from_sides(1, 1, 2); }) == ErrorKind::DegenerateTriangle);
  CHECK(kind_of([] { triangle_from_sides(1, 2, 5); }) == ErrorKind::DegenerateTriangle);
  CHECK(kind_of([] { triangle_from_sides(0, 1, 1); }) == ErrorKind::DegenerateTriangle);
  CHECK(kind_of([] { triangle_from_sides(-1, 1, 1); }) == ErrorKind::DegenerateTriangle);
}

TEST_CASE("subtended angles") {
  const auto tri = triangle_from_sides(1, 1, 1);
  SUBCASE("axis point") {
    const auto ang = subtended_angles(axis_point(), tri);
    CHECK(ang.alpha == doctest::Approx(kAxisAngle).epsilon(1e-14));
    CHECK(ang.beta == doctest::Approx(kAxisAngle).epsilon(1e-14));
    CHECK(ang.gamma == doctest::Approx(kAxisAngle).epsilon(1e-14));
    CHECK(ang.alpha == doctest::Approx(0.895665).epsilon(1e-6));
  }
  SUBCASE("circumcircle arc opposite A") {
    const auto t = triangle_from_sides(1.2, 0.9, 1.1);
    const Vec3 cc = t.circumcenter();
    const Vec3 p = cc - (t.A - cc);  // antipode of A
    CHECK(subtended_angle(p, t.B, t.C) == doctest::Approx(pi - t.angleA).epsilon(1e-12));
  }
  SUBCASE("far away") {
    const auto ang = subtended_angles(Vec3(3e5, -4e5, 8e5), tri);
    CHECK(ang.alpha < 1e-5);
    CHECK(ang.beta < 1e-5);
    CHECK(ang.gamma < 1e-5);
  }
  SUBCASE("vertex coincidence") {
    CHECK(kind_of([&] { subtended_angles(tri.B, tri); }) == ErrorKind::VertexCoincidence);
  }
}

TEST_CASE("toroid signed excess") {
  const auto tri = triangle_from_sides(1, 1, 1);
  const auto tA = toroid(tri, ToroidLabel::TA);
  const Vec3 cc = tri.circumcenter();
  SUBCASE("major arc through A is on T_A") {
    const Vec3 r = tri.A - cc;
    for (double th : {-0.4, 0.1, 0.7}) {
      const Vec3 p = cc + Vec3(std::cos(th) * r.x() - std::sin(th) * r.y(),
                               std::sin(th) * r.x() + std::cos(th) * r.y(), 0.0);
      CHECK(std::abs(toroid_signed_excess(p, tA)) < 1e-12);
    }
  }
  SUBCASE("circumcenter sees BC under the central angle") {
    CHECK(toroid_signed_excess(cc, tA) == doctest::Approx(pi / 3).epsilon(1e-13));
  }
  SUBCASE("far field") {
    CHECK(toroid_signed_excess(Vec3(1e6, 2e5, 3e5), tA) == doctest::Approx(-pi / 3).epsilon(1e-5));
  }
  SUBCASE("six toroids in label order") {
    const auto all = six_toroids(tri);
    CHECK(all[0].label == ToroidLabel::TA);
    CHECK(all[1].label == ToroidLabel::TpiA);
    CHECK(all[5].label == ToroidLabel::TpiC);
    CHECK(all[1].inscribedAngle == doctest::Approx(pi - tri.angleA));
  }
}

TEST_CASE("region classification") {
  const auto tri = triangle_from_sides(1, 1, 1);
  SUBCASE("axis point at height 1 is outside everything") {
    const auto rep = classify_region(axis_point(), tri);
    for (const auto& t : rep.perToroid) CHECK(t.status == RegionStatus::Outside);
    CHECK(rep.outsideUnion);
  }
  SUBCASE("circumcenter is inside the three acute toroids") {
    const auto rep = classify_region(tri.circumcenter(), tri);
    CHECK(rep[ToroidLabel::TA].status == RegionStatus::Inside);
    CHECK(rep[ToroidLabel::TB].status == RegionStatus::Inside);
    CHECK(rep[ToroidLabel::TC].status == RegionStatus::Inside);
    CHECK_FALSE(rep.outsideUnion);
  }
  SUBCASE("boundary") {
    const auto rep = classify_region(tri.circumcenter() - (tri.A - tri.circumcenter()), tri);
    CHECK(rep[ToroidLabel::TpiA].status == RegionStatus::OnBoundary);
  }
  SUBCASE("circumsphere points obey the pair bounds") {
    const auto t = triangle_from_sides(1.2, 0.9, 1.1);
    const auto sph = circumsphere(t);
    for (int i = 0; i < 50; ++i) {
      const double th = 0.1 + 0.05 * i;
      const double ph = 0.3 * i;
      const Vec3 p = sph.center + sph.radius * Vec3(std::sin(th) * std::cos(ph),
                                                    std::sin(th) * std::sin(ph), std::cos(th));
      const double apc = subtended_angle(p, t.A, t.C);
      CHECK(apc > std::min(t.angleB, pi - t.angleB) - 1e-12);
      CHECK(apc < std::max(t.angleB, pi - t.angleB) + 1e-12);
    }
  }
}

TEST_CASE("circumsphere") {
  const auto eq = circumsphere(triangle_from_sides(1, 1, 1));
  CHECK(eq.radius == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK((eq.center - Vec3(0.5, std::sqrt(3.0) / 6, 0)).norm() < 1e-14);

  const auto r = triangle_from_sides(3, 4, 5);
  const auto s = circumsphere(r);
  CHECK(s.radius == doctest::Approx(2.5).epsilon(1e-14));
  CHECK((s.center - (r.A + r.B) / 2).norm() < 1e-13);

  for (double k : {0.01, 3.0, 250.0}) {
    CHECK(circumsphere(triangle_from_sides(3 * k, 4 * k, 5 * k)).radius ==
          doctest::Approx(2.5 * k).epsilon(1e-13));
  }
}

TEST_CASE("cone intersection") {
  const double d = pi / 180;
  CHECK(cones_intersect(30 * d, 40 * d, 60 * d));
  CHECK_FALSE(cones_intersect(10 * d, 20 * d, 60 * d));
  CHECK(cones_intersect(30 * d, 30 * d, 60 * d));
  CHECK_FALSE(cones_intersect(10 * d, 80 * d, 60 * d));
}

TEST_CASE("view angle realizability") {
  const auto tri = triangle_from_sides(1, 1, 1);
  CHECK(subtended_angles(axis_point(), tri).realizable());
  CHECK(ViewAngles{3.0, 3.0, 0.2}.realizable());
  CHECK_FALSE(ViewAngles{3.1, 3.1, 0.2}.realizable());
  CHECK_FALSE(ViewAngles{0.1, 0.2, 1.0}.realizable());
}
