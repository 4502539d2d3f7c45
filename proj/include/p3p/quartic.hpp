#pragma once

#include <array>
#include <vector>

#include "p3p/geom.hpp"

namespace p3p {

/// Coefficients of a0 + a1 x + ... + a4 x^4, stored low order first.
using QuarticCoeffs = std::array<double, 5>;
using QuarticCoeffsExt = std::array<long double, 5>;

/// Grunert's quartic in v = s3 / s1.
struct GrunertQuartic {
  double A4 = 0.0;
  double A3 = 0.0;
  double A2 = 0.0;
  double A1 = 0.0;
  double A0 = 0.0;
  QuarticCoeffsExt extended{};  // same coefficients before rounding to double
  ControlTriangle sourceTriangle;
  ViewAngles sourceAngles;

  QuarticCoeffs coeffs() const { return {A0, A1, A2, A3, A4}; }
  double max_abs_coeff() const;
  double operator()(double v) const;
};

struct Root {
  double value = 0.0;
  int multiplicity = 1;
  bool tangent = false;  // even-order touch found only within rounding of zero
};

struct RootSet {
  std::vector<Root> roots;  // ascending
  int complexPairCount = 0;

  int count_with_multiplicity() const;
  int positive_count_with_multiplicity() const;
};

inline constexpr double kDefaultRootCluster = 1e-6;

GrunertQuartic grunert_coefficients(const ControlTriangle& tri, const ViewAngles& ang);

/// Real roots of a degree-4 polynomial. Roots are isolated on the Cauchy
/// bound interval using the recursively computed critical points of the
/// polynomial (each piece between consecutive critical points is monotone),
/// bisected to full precision, Newton-polished, then clustered with relative
/// tolerance `tolCluster`.
RootSet real_roots(const QuarticCoeffs& coeffs, double tolCluster = kDefaultRootCluster);
RootSet real_roots(const QuarticCoeffsExt& coeffs, double tolCluster = kDefaultRootCluster);
/// Uses the extended-precision coefficients.
RootSet real_roots(const GrunertQuartic& q, double tolCluster = kDefaultRootCluster);

double evaluate(const QuarticCoeffs& coeffs, double x);

}  // namespace p3p
