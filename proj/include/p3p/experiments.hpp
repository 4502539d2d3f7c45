#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "p3p/geom.hpp"
#include "p3p/solver.hpp"

namespace p3p {

// ---------------------------------------------------------------------------
// Seeding and scene generation

/// Independent generator for trial `index` of a campaign seeded with `seed`
/// (splitmix64 of seed ^ index). Campaign output never depends on the order
/// in which trials are evaluated.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

enum class TriangleKind { Equilateral, Pythagorean345, RandomAcute, RandomObtuse, RandomAny };

/// Unit-scale triangles; random kinds keep every angle at least 10 degrees.
ControlTriangle make_triangle(TriangleKind kind, std::uint64_t seed = 0);

/// Uniform direction on the unit sphere.
Vec3 random_direction(std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Reports

struct TrialRecord {
  std::int64_t index = 0;
  Vec3 point = Vec3::Zero();
  int nSolutions = 0;
  int nSSolutions = 0;
  std::string note;
};

struct TheoremReport {
  std::string theoremId;
  std::int64_t trials = 0;
  std::int64_t consistent = 0;
  std::int64_t violations = 0;
  std::int64_t exceptional = 0;
  std::vector<TrialRecord> consistentSamples;
  std::vector<TrialRecord> violationSamples;
  std::vector<TrialRecord> exceptionalSamples;
  std::map<std::string, std::int64_t> tallies;
  std::uint64_t seed = 0;
  double wallTime = 0.0;  // seconds; excluded from reproducible serializations

  enum class Outcome { Consistent, Violation, Exceptional };
  void record(Outcome outcome, TrialRecord rec);
  bool passed() const { return violations == 0; }
};

// ---------------------------------------------------------------------------
// Region-conditioned Monte Carlo

/// Rejection sampling of optical centers strictly outside the union of the six
/// toroids: 90% uniform in a ball of radius 8 R about the circumcenter, 10%
/// in the shell out to 100 R. Points within 1e-6 diameter of the control
/// plane are rejected.
std::vector<Vec3> sample_outside_union(const ControlTriangle& tri, int n, std::uint64_t seed);

struct OutsideReport {
  TheoremReport theorem1;  // |solutions| in {2, 4}
  TheoremReport theorem2;  // #positive roots == #solutions
  TheoremReport lemma2;    // no S-solutions
  TheoremReport signLaw;   // A4 < 0 and A0 < 0
};

OutsideReport verify_outside_theorems(const ControlTriangle& tri, int trials, std::uint64_t seed);

/// Sign of A4 (A0) against the A (C) toroid pair over a ball of radius 3 R:
/// positive exactly when the center is inside one toroid of the pair and
/// outside the other.
TheoremReport verify_sign_law(const ControlTriangle& tri, int trials, std::uint64_t seed);

/// Synthesized poses (random triangle, random off-plane center): the true
/// depths must appear among the solutions.
TheoremReport verify_ground_truth(int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Path sweeps

struct SweepConfig {
  ControlTriangle tri;
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
  int steps = 1000;
  double delta = 1e-4;  // fraction of the segment
  std::uint64_t seed = 0;
};

void validate(const SweepConfig& cfg);

enum class CrossDirection { OutsideToInside, InsideToOutside, Tangent };
enum class Verdict { ConsistentThm3, ConsistentThm4, ConsistentThm5, Exceptional, Violation };

std::string_view to_string(CrossDirection d);
std::string_view to_string(Verdict v);

struct CrossingEvent {
  ToroidLabel toroid = ToroidLabel::TA;
  double tCross = 0.0;
  CrossDirection direction = CrossDirection::OutsideToInside;
  int countBefore = 0;
  int countAfter = 0;
  int sCountBefore = 0;
  int sCountAfter = 0;
  int weightedBefore = 0;
  int weightedAfter = 0;
  double minAbsElementAtCross = 0.0;
  bool outerSurface = false;
  std::vector<std::string> sPatternBefore;  // sign pattern of each S-solution, e.g. "++-"
  std::vector<std::string> sPatternAfter;
  Verdict verdict = Verdict::Exceptional;
  std::string note;

  int delta_count() const { return countAfter - countBefore; }
};

struct SweepSample {
  double t = 0.0;
  Vec3 point = Vec3::Zero();
  ViewAngles angles;
  std::array<RegionStatus, 6> status{};
  std::array<double, 6> excess{};
  bool solved = false;
  int nSolutions = 0;
  int nSSolutions = 0;
  double minAbsElement = 0.0;
};

/// Solution count changed between two consecutive steps with no toroid
/// crossing in between (a pair of roots meeting on the discriminant surface).
struct RootStructureChange {
  double t0 = 0.0;
  double t1 = 0.0;
  int countBefore = 0;
  int countAfter = 0;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::vector<CrossingEvent> events;  // ascending tCross
  std::vector<RootStructureChange> rootChanges;
};

SweepResult sweep_path(const SweepConfig& cfg);

enum class CrossingTheorem { Theorem3, Theorem4, Theorem5 };

/// Random short transversal paths through the target toroids: T_A, T_B, T_C
/// for Theorem3, the outer surface of the union (inward) for Theorem4, and
/// T_pi-A, T_pi-B, T_pi-C for Theorem5. Theorem3 and Theorem5 use `nPaths` per
/// target toroid.
TheoremReport verify_crossing_theorem(const ControlTriangle& tri, CrossingTheorem which,
                                      int nPaths, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Circumsphere and cone checks

/// Circumsphere angle bounds and the cone-intersection inequality on T_A,
/// the latter checked both in angle form and in the distance form.
TheoremReport verify_lemma_suite(const ControlTriangle& tri, int trials, std::uint64_t seed);

}  // namespace p3p
