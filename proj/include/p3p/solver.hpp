#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p3p/error.hpp"
#include "p3p/geom.hpp"
#include "p3p/quartic.hpp"

namespace p3p {

enum class TripletClass { Solution, SSolution, DegenerateZero };

/// Which two view angles get replaced by their supplements.
enum class SupplementPair { AlphaBeta, AlphaGamma, BetaGamma };

std::string_view to_string(TripletClass cls);
std::string_view to_string(SupplementPair pair);

struct RawTriplet {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

struct TripletTag {
  TripletClass cls = TripletClass::Solution;
  std::optional<SupplementPair> pair;  // set for SSolution
  int zeroIndex = 0;                   // 1..3, set for DegenerateZero
};

struct DepthTriplet {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double v = 0.0;  // originating root, s3 / s1 before canonicalization
  double u = 0.0;  // s2 / s1 before canonicalization
  TripletTag tag;
  double residual = 0.0;
  int rootMultiplicity = 1;

  double min_abs_element() const;
};

/// Failure to turn one root into a triplet; recorded, other roots continue.
struct RootFailure {
  double v = 0.0;
  int rootMultiplicity = 1;
  ErrorKind kind = ErrorKind::NoRealTriplet;
  std::string message;
};

struct SolveOptions {
  double tolCluster = kDefaultRootCluster;
  /// Absolute zero threshold for depth elements; defaults to 1e-9 * mean side.
  std::optional<double> zeroTol;
  /// Triplets with a larger normalized residual are recorded as failures.
  double residualTol = 1e-8;
};

struct SolveReport {
  GrunertQuartic quartic;
  RootSet rootSet;
  std::vector<DepthTriplet> triplets;
  std::vector<DepthTriplet> solutions;
  std::vector<DepthTriplet> sSolutions;
  std::vector<RootFailure> failures;
  int droppedTangencies = 0;  // rounding-level touches with no consistent triplet
  bool nonRealizable = false;
  std::optional<RegionReport> region;

  /// Distinct solutions (a repeated root counts once).
  int solution_count() const { return static_cast<int>(solutions.size()); }
  int solution_count_weighted() const;
  int s_solution_count() const { return static_cast<int>(sSolutions.size()); }
  int s_solution_count_weighted() const;
  double min_abs_element() const;
};

/// Normalized residual of the three law-of-cosines constraints.
double constraint_residual(double s1, double s2, double s3, const ControlTriangle& tri,
                           const ViewAngles& ang);

RawTriplet canonicalize_triplet(const RawTriplet& t);
TripletTag classify_triplet(const RawTriplet& t, double zeroTol);

/// Depths for one root of Grunert's quartic, with s1 > 0 before
/// canonicalization. When the linear relation for u is singular the
/// quadratic in u is used instead, picking the branch that best fits the
/// remaining constraint; NoRealTriplet when no real u exists.
DepthTriplet back_substitute(double v, const ControlTriangle& tri, const ViewAngles& ang,
                             std::optional<double> zeroTol = std::nullopt);
/// Distinct candidate triplets for the root, smallest residual first: the
/// linear relation for u when usable, plus both quadratic branches when it is
/// singular or `everyBranch` is set.
std::vector<DepthTriplet> back_substitute_branches(double v, const ControlTriangle& tri,
                                                   const ViewAngles& ang,
                                                   std::optional<double> zeroTol = std::nullopt,
                                                   bool everyBranch = false);

ViewAngles supplementary_angles(const ViewAngles& ang, SupplementPair pair);

SolveReport solve_p3p(const ControlTriangle& tri, const ViewAngles& ang,
                      const SolveOptions& opts = {});

/// Optical center candidates at distances (s1, s2, s3) from (A, B, C): zero,
/// one (in the control plane) or two mirror points.
std::vector<Vec3> positions_from_triplet(const DepthTriplet& t, const ControlTriangle& tri);
std::vector<Vec3> positions_from_distances(double s1, double s2, double s3,
                                           const ControlTriangle& tri);

double default_zero_tol(const ControlTriangle& tri);

}  // namespace p3p
