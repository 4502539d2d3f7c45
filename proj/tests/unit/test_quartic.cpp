#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "p3p/experiments.hpp"
#include "p3p/quartic.hpp"

using namespace p3p;

namespace {
QuarticCoeffs from_roots(double r1, double r2, double r3, double r4) {
  // expand (x - r1)(x - r2)(x - r3)(x - r4)
  std::array<double, 5> c{1, 0, 0, 0, 0};
  int deg = 0;
  for (double r : {r1, r2, r3, r4}) {
    for (int i = deg + 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
    ++deg;
  }
  return c;
}
}  // namespace

TEST_CASE("Grunert coefficients on the equilateral axis") {
  const auto tri = triangle_from_sides(1, 1, 1);
  const double a = std::acos(0.625);
  const auto q = grunert_coefficients(tri, {a, a, a});
  CHECK(q.A4 == doctest::Approx(-0.5625).epsilon(1e-13));
  CHECK(q.A0 == doctest::Approx(-0.5625).epsilon(1e-13));
  CHECK(std::abs(q(1.0)) < 1e-13);
  CHECK(static_cast<double>(q.extended[4]) == q.A4);
}

TEST_CASE("alpha equal to angle A kills the leading coefficient") {
  const auto tri = triangle_from_sides(1.2, 0.9, 1.1);
  const auto q = grunert_coefficients(tri, {tri.angleA, 0.7, 0.8});
  CHECK(std::abs(q.A4) < 1e-14);
}

TEST_CASE("outside the union both end coefficients are negative") {
  for (auto kind : {TriangleKind::Equilateral, TriangleKind::Pythagorean345, TriangleKind::RandomObtuse}) {
    const auto tri = make_triangle(kind, 3);
    for (const Vec3& p : sample_outside_union(tri, 200, 11)) {
      const auto q = grunert_coefficients(tri, subtended_angles(p, tri));
      CHECK(q.A4 < 0.0);
      CHECK(q.A0 < 0.0);
      const int n = real_roots(q).count_with_multiplicity();
      CHECK((n == 2 || n == 4));
    }
  }
}

TEST_CASE("double root with a complex pair") {
  const auto rs = real_roots(QuarticCoeffs{1, -2, 2, -2, 1});
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0].value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(rs.roots[0].multiplicity == 2);
  CHECK(rs.complexPairCount == 1);
}

TEST_CASE("four simple roots") {
  const auto rs = real_roots(from_roots(1, 2, 3, 4));
  REQUIRE(rs.roots.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(rs.roots[i].value == doctest::Approx(i + 1.0).epsilon(1e-12));
    CHECK(rs.roots[i].multiplicity == 1);
  }
  CHECK(rs.complexPairCount == 0);
}

TEST_CASE("no real roots") {
  const auto rs = real_roots(QuarticCoeffs{1, 0, 0, 0, 1});
  CHECK(rs.roots.empty());
  CHECK(rs.complexPairCount == 2);
}

TEST_CASE("quadruple root") {
  const auto rs = real_roots(from_roots(1.5, 1.5, 1.5, 1.5));
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0].multiplicity == 4);
  CHECK(rs.roots[0].value == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("random products recover their roots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<double, 4> r{u(rng), u(rng), u(rng), u(rng)};
    std::sort(r.begin(), r.end());
    bool separated = true;
    for (int i = 0; i < 3; ++i) separated &= r[i + 1] - r[i] > 1e-3;
    if (!separated) continue;
    const auto rs = real_roots(from_roots(r[0], r[1], r[2], r[3]));
    REQUIRE(rs.roots.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(rs.roots[i].value - r[i]) < 1e-9 * (1 + std::abs(r[i])));
  }
}

TEST_CASE("root count parity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    QuarticCoeffs c{u(rng), u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(c[4]) < 1e-3) continue;
    const auto rs = real_roots(c);
    CHECK(rs.count_with_multiplicity() + 2 * rs.complexPairCount == 4);
    for (std::size_t i = 1; i < rs.roots.size(); ++i) CHECK(rs.roots[i - 1].value < rs.roots[i].value);
  }
}

TEST_CASE("positive root count") {
  const auto rs = real_roots(from_roots(-2, -1, 0.5, 3));
  CHECK(rs.count_with_multiplicity() == 4);
  CHECK(rs.positive_count_with_multiplicity() == 2);
}
