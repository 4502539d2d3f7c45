#pragma once

#include <vector>

#include "p3p/geom.hpp"
#include "p3p/solver.hpp"

namespace p3p {

// Brute-force P3P by direct search over inscribed-angle toroids. Nothing in
// here touches Grunert's quartic; it exists to cross-check solve_p3p.

struct ToroidSample {
  double phi = 0.0;  // along the generating arc, (0, pi); pi/2 is the apex
  double psi = 0.0;  // rotation about the chord, [0, 2 pi)
  Vec3 point = Vec3::Zero();
};

Vec3 toroid_point(const ToroidSpec& t, double phi, double psi);

struct OracleResult {
  std::vector<Vec3> centers;
  std::vector<RawTriplet> triplets;  // (|PA|, |PB|, |PC|) per center
  std::vector<ToroidSample> samples; // parameters of each center on the base toroid
  int nPhi = 0;
  int nPsi = 0;
  int baseAngle = 0;  // index of the view angle whose toroid was sampled
  bool gridTooCoarse = false;
};

inline constexpr int kMinOracleGrid = 64;

OracleResult brute_force_solve(const ControlTriangle& tri, const ViewAngles& ang, int nPhi,
                               int nPsi);

struct MatchReport {
  bool perfect = false;
  int solverPositions = 0;
  int oracleCenters = 0;
  std::vector<double> distances;  // one per matched pair
  double maxDistance = 0.0;
  std::vector<Vec3> unmatchedSolver;
  std::vector<Vec3> unmatchedOracle;
};

/// Greedy nearest-pair bijection between solver positions (both mirror points
/// of every Solution) and oracle centers, accepting pairs closer than `tol`.
MatchReport compare(const SolveReport& report, const ControlTriangle& tri,
                    const OracleResult& oracle, double tol);
MatchReport compare_positions(const std::vector<Vec3>& solverPoints, const OracleResult& oracle,
                              double tol);

}  // namespace p3p
