#include "p3p/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "p3p/error.hpp"
#include "p3p/oracle.hpp"

namespace p3p {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr std::size_t kMaxSamplesPerCategory = 8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void bump(TheoremReport& r, const std::string& key, std::int64_t by = 1) { r.tallies[key] += by; }

std::string sign_pattern(const DepthTriplet& t) {
  std::string s;
  for (double x : {t.s1, t.s2, t.s3}) s.push_back(x < 0 ? '-' : '+');
  return s;
}

double min_vertex_distance(const Vec3& p, const ControlTriangle& tri) {
  return std::min({(p - tri.A).norm(), (p - tri.B).norm(), (p - tri.C).norm()});
}

double segment_point_distance(const Vec3& a, const Vec3& b, const Vec3& p) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

ControlTriangle triangle_from_angles(double A, double B, double C) {
  return triangle_from_sides(2.0 * std::sin(A), 2.0 * std::sin(B), 2.0 * std::sin(C));
}

// ---------------------------------------------------------------------------

struct CountInfo {
  bool ok = false;
  int n = 0;
  int s = 0;
  int nWeighted = 0;
  int sWeighted = 0;
  int realRoots = 0;
  double minAbs = std::numeric_limits<double>::infinity();
  std::vector<std::string> sPatterns;
  std::string error;
};

CountInfo count_at(const ControlTriangle& tri, const Vec3& p) {
  CountInfo c;
  try {
    const SolveReport rep = solve_p3p(tri, subtended_angles(p, tri));
    c.ok = true;
    c.n = rep.solution_count();
    c.s = rep.s_solution_count();
    c.nWeighted = rep.solution_count_weighted();
    c.sWeighted = rep.s_solution_count_weighted();
    c.minAbs = rep.min_abs_element();
    c.realRoots = rep.rootSet.count_with_multiplicity();
    for (const auto& t : rep.sSolutions) c.sPatterns.push_back(sign_pattern(t));
    std::sort(c.sPatterns.begin(), c.sPatterns.end());
    if (!rep.failures.empty()) {
      c.ok = false;
      c.error = rep.failures.front().message;
    }
  } catch (const Error& e) {
    c.error = e.what();
    // Exactly on a toroid pair the degenerate triplet has a zero element.
    if (e.kind() == ErrorKind::OnToroidPair) c.minAbs = 0.0;
  }
  return c;
}

Vec3 path_point(const SweepConfig& cfg, double t) { return cfg.start + t * (cfg.end - cfg.start); }

struct Bracket {
  std::size_t toroid = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool tangent = false;
};

// Golden-section search for the extremum of `sgn * f` closest to zero on
// [a, b], i.e. the minimum of sgn * f.
template <class F>
double golden_min(F f, double a, double b, int iters = 80) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

template <class F>
double bisect_t(F f, double lo, double hi) {
  const bool loNeg = f(lo) < 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == loNeg) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool is_pi_toroid(ToroidLabel l) {
  return l == ToroidLabel::TpiA || l == ToroidLabel::TpiB || l == ToroidLabel::TpiC;
}

Vec3 excess_gradient(const ToroidSpec& t, const Vec3& p, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 dp = Vec3::Zero();
    dp(i) = h;
    g(i) = (toroid_signed_excess(p + dp, t) - toroid_signed_excess(p - dp, t)) / (2.0 * h);
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 d;
  do {
    d = Vec3(n(rng), n(rng), n(rng));
  } while (d.norm() < 1e-12);
  return d.normalized();
}

ControlTriangle make_triangle(TriangleKind kind, std::uint64_t seed) {
  auto rng = trial_rng(seed, 0x7472692dULL);
  switch (kind) {
    case TriangleKind::Equilateral: return triangle_from_sides(1.0, 1.0, 1.0);
    case TriangleKind::Pythagorean345: return triangle_from_sides(3.0, 4.0, 5.0);
    case TriangleKind::RandomAcute:
      for (;;) {
        const double A = uniform(rng, 10.0, 85.0) * kDeg;
        const double B = uniform(rng, 10.0, 85.0) * kDeg;
        const double C = kPi - A - B;
        if (C >= 10.0 * kDeg && C <= 85.0 * kDeg) return triangle_from_angles(A, B, C);
      }
    case TriangleKind::RandomObtuse:
      for (;;) {
        const double big = uniform(rng, 100.0, 150.0) * kDeg;
        const double small = uniform(rng, 10.0, 170.0) * kDeg;
        const double rest = kPi - big - small;
        if (small < 10.0 * kDeg || rest < 10.0 * kDeg) continue;
        std::array<double, 3> ang{big, small, rest};
        std::rotate(ang.begin(), ang.begin() + static_cast<long>(rng() % 3), ang.end());
        return triangle_from_angles(ang[0], ang[1], ang[2]);
      }
    case TriangleKind::RandomAny:
      for (;;) {
        const double A = uniform(rng, 10.0, 160.0) * kDeg;
        const double B = uniform(rng, 10.0, 160.0) * kDeg;
        const double C = kPi - A - B;
        if (C >= 10.0 * kDeg) return triangle_from_angles(A, B, C);
      }
  }
  throw Error(ErrorKind::InvalidInput, "unknown triangle kind");
}

void TheoremReport::record(Outcome outcome, TrialRecord rec) {
  ++trials;
  switch (outcome) {
    case Outcome::Consistent:
      ++consistent;
      if (consistentSamples.size() < kMaxSamplesPerCategory) consistentSamples.push_back(std::move(rec));
      break;
    case Outcome::Violation:
      ++violations;
      if (violationSamples.size() < kMaxSamplesPerCategory) violationSamples.push_back(std::move(rec));
      break;
    case Outcome::Exceptional:
      ++exceptional;
      if (exceptionalSamples.size() < kMaxSamplesPerCategory) exceptionalSamples.push_back(std::move(rec));
      break;
  }
}

// ---------------------------------------------------------------------------

std::vector<Vec3> sample_outside_union(const ControlTriangle& tri, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "sample count must be at least 1");
  const Vec3 center = tri.circumcenter();
  const double R = tri.circumradius();
  const double planeTol = 1e-6 * tri.diameter();
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  std::int64_t attempts = 0;
  for (int i = 0; i < n; ++i) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    for (;;) {
      ++attempts;
      if (attempts > 1000 && static_cast<double>(out.size() + 1) < 1e-3 * static_cast<double>(attempts)) {
        throw Error(ErrorKind::SamplingStarved, "acceptance rate below 0.1%");
      }
      const bool tail = uniform(rng, 0.0, 1.0) < 0.1;
      const double r = tail ? uniform(rng, 8.0 * R, 100.0 * R)
                            : 8.0 * R * std::cbrt(uniform(rng, 0.0, 1.0));
      const Vec3 p = center + r * random_direction(rng);
      if (std::abs(p.z()) <= planeTol) continue;
      try {
        if (classify_region(p, tri).outsideUnion) {
          out.push_back(p);
          break;
        }
      } catch (const Error&) {
        // on a vertex or a chord line: resample
      }
    }
  }
  return out;
}

OutsideReport verify_outside_theorems(const ControlTriangle& tri, int trials, std::uint64_t seed) {
  const auto t0 = Clock::now();
  OutsideReport rep;
  rep.theorem1.theoremId = "1";
  rep.theorem2.theoremId = "2";
  rep.lemma2.theoremId = "lemma2";
  rep.signLaw.theoremId = "signlaw-outside";
  for (auto* r : {&rep.theorem1, &rep.theorem2, &rep.lemma2, &rep.signLaw}) r->seed = seed;

  using O = TheoremReport::Outcome;
  const auto points = sample_outside_union(tri, trials, seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    TrialRecord rec;
    rec.index = static_cast<std::int64_t>(i);
    rec.point = p;
    std::optional<SolveReport> solved;
    try {
      solved = solve_p3p(tri, subtended_angles(p, tri));
    } catch (const Error& e) {
      rec.note = e.what();
      for (auto* r : {&rep.theorem1, &rep.theorem2, &rep.lemma2, &rep.signLaw}) r->record(O::Violation, rec);
      continue;
    }
    const SolveReport& s = *solved;
    rec.nSolutions = s.solution_count_weighted();
    rec.nSSolutions = s.s_solution_count_weighted();
    const int degenerate = static_cast<int>(std::count_if(
        s.triplets.begin(), s.triplets.end(),
        [](const DepthTriplet& t) { return t.tag.cls == TripletClass::DegenerateZero; }));

    // two or four solutions
    {
      TrialRecord r = rec;
      const bool ok = (rec.nSolutions == 2 || rec.nSolutions == 4) && s.failures.empty();
      if (!ok) r.note = s.failures.empty() ? "solution count not in {2,4}" : s.failures.front().message;
      bump(rep.theorem1, "solutions_" + std::to_string(rec.nSolutions));
      if (s.solution_count() != rec.nSolutions) bump(rep.theorem1, "repeated_root_samples");
      if (rec.nSolutions == 1) bump(rep.theorem1, "unique_solution");
      rep.theorem1.record(ok ? O::Consistent : O::Violation, std::move(r));
    }
    // positive roots vs solutions
    {
      TrialRecord r = rec;
      const int positive = s.rootSet.positive_count_with_multiplicity();
      const bool ok = positive == rec.nSolutions && s.failures.empty();
      if (!ok) {
        std::ostringstream os;
        os << positive << " positive roots vs " << rec.nSolutions << " solutions";
        r.note = os.str();
      }
      rep.theorem2.record(ok ? O::Consistent : O::Violation, std::move(r));
    }
    // no S-solutions
    {
      TrialRecord r = rec;
      const bool ok = s.sSolutions.empty() && degenerate == 0;
      if (!ok) r.note = degenerate ? "zero depth element outside the union" : "S-solution outside the union";
      rep.lemma2.record(ok ? O::Consistent : O::Violation, std::move(r));
    }
    // Coefficient signs
    {
      TrialRecord r = rec;
      const bool ok = s.quartic.A4 < 0.0 && s.quartic.A0 < 0.0;
      if (!ok) r.note = "A4 or A0 not negative outside the union";
      rep.signLaw.record(ok ? O::Consistent : O::Violation, std::move(r));
    }
  }
  const double wall = seconds_since(t0);
  for (auto* r : {&rep.theorem1, &rep.theorem2, &rep.lemma2, &rep.signLaw}) r->wallTime = wall;
  return rep;
}

TheoremReport verify_sign_law(const ControlTriangle& tri, int trials, std::uint64_t seed) {
  const auto t0 = Clock::now();
  TheoremReport rep;
  rep.theoremId = "signlaw";
  rep.seed = seed;
  using O = TheoremReport::Outcome;
  const Vec3 center = tri.circumcenter();
  const double R = tri.circumradius();
  const double diam = tri.diameter();
  for (int i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    Vec3 p;
    RegionReport region;
    for (;;) {
      p = center + 3.0 * R * std::cbrt(uniform(rng, 0.0, 1.0)) * random_direction(rng);
      if (std::abs(p.z()) <= 1e-6 * diam || min_vertex_distance(p, tri) < 1e-6 * diam) continue;
      try {
        region = classify_region(p, tri);
        break;
      } catch (const Error&) {
      }
    }
    TrialRecord rec;
    rec.index = i;
    rec.point = p;
    const GrunertQuartic q = grunert_coefficients(tri, subtended_angles(p, tri));
    const auto insideCount = [&](int vertex) {
      const auto k = static_cast<std::size_t>(2 * vertex);
      return (region.perToroid[k].status == RegionStatus::Inside) +
             (region.perToroid[k + 1].status == RegionStatus::Inside);
    };
    const auto onBoundary = [&](int vertex) {
      const auto k = static_cast<std::size_t>(2 * vertex);
      return region.perToroid[k].status == RegionStatus::OnBoundary ||
             region.perToroid[k + 1].status == RegionStatus::OnBoundary;
    };
    if (onBoundary(0) || onBoundary(2)) {
      rec.note = "on a toroid of the A or C pair";
      rep.record(O::Exceptional, std::move(rec));
      continue;
    }
    const bool a4Positive = insideCount(0) == 1;
    const bool a0Positive = insideCount(2) == 1;
    bump(rep, a4Positive ? "A4_positive" : "A4_negative");
    bump(rep, a0Positive ? "A0_positive" : "A0_negative");
    const bool ok = (a4Positive ? q.A4 > 0.0 : q.A4 < 0.0) && (a0Positive ? q.A0 > 0.0 : q.A0 < 0.0);
    if (!ok) rec.note = "coefficient sign disagrees with region";
    rep.record(ok ? O::Consistent : O::Violation, std::move(rec));
  }
  rep.wallTime = seconds_since(t0);
  return rep;
}

TheoremReport verify_ground_truth(int trials, std::uint64_t seed) {
  const auto t0 = Clock::now();
  TheoremReport rep;
  rep.theoremId = "roundtrip";
  rep.seed = seed;
  using O = TheoremReport::Outcome;
  for (int i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    const ControlTriangle unit = make_triangle(TriangleKind::RandomAny, rng());
    const double scale = uniform(rng, 0.5, 5.0);
    const ControlTriangle tri = triangle_from_sides(scale * unit.a, scale * unit.b, scale * unit.c);
    const double diam = tri.diameter();
    Vec3 o;
    do {
      o = tri.circumcenter() + 4.0 * tri.circumradius() * std::cbrt(uniform(rng, 0.0, 1.0)) *
                                   random_direction(rng);
    } while (std::abs(o.z()) < 1e-3 * diam || min_vertex_distance(o, tri) < 1e-3 * diam);

    TrialRecord rec;
    rec.index = i;
    rec.point = o;
    const double s1 = (o - tri.A).norm(), s2 = (o - tri.B).norm(), s3 = (o - tri.C).norm();
    try {
      const SolveReport s = solve_p3p(tri, subtended_angles(o, tri));
      rec.nSolutions = s.solution_count();
      double best = std::numeric_limits<double>::infinity();
      double bestResidual = 0.0;
      for (const auto& t : s.solutions) {
        const double err = std::max({std::abs(t.s1 - s1) / s1, std::abs(t.s2 - s2) / s2,
                                     std::abs(t.s3 - s3) / s3});
        if (err < best) {
          best = err;
          bestResidual = t.residual;
        }
      }
      const bool ok = best <= 1e-6 && bestResidual <= 1e-8;
      if (!ok) {
        std::ostringstream os;
        os << "best relative depth error " << best << ", residual " << bestResidual;
        rec.note = os.str();
      }
      rep.record(ok ? O::Consistent : O::Violation, std::move(rec));
    } catch (const Error& e) {
      rec.note = e.what();
      rep.record(O::Violation, std::move(rec));
    }
  }
  rep.wallTime = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------

std::string_view to_string(CrossDirection d) {
  switch (d) {
    case CrossDirection::OutsideToInside: return "OutsideToInside";
    case CrossDirection::InsideToOutside: return "InsideToOutside";
    case CrossDirection::Tangent: return "Tangent";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsistentThm3: return "ConsistentThm3";
    case Verdict::ConsistentThm4: return "ConsistentThm4";
    case Verdict::ConsistentThm5: return "ConsistentThm5";
    case Verdict::Exceptional: return "Exceptional";
    case Verdict::Violation: return "Violation";
  }
  return "?";
}

void validate(const SweepConfig& cfg) {
  if (cfg.steps < 100) throw Error(ErrorKind::InvalidInput, "sweep needs at least 100 steps");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / cfg.steps)) {
    throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1/steps)");
  }
  if ((cfg.end - cfg.start).norm() <= 0.0 || !cfg.start.allFinite() || !cfg.end.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "path endpoints must be finite and distinct");
  }
}

SweepResult sweep_path(const SweepConfig& cfg) {
  validate(cfg);
  const ControlTriangle& tri = cfg.tri;
  const double diam = tri.diameter();
  for (int v = 0; v < 3; ++v) {
    if (segment_point_distance(cfg.start, cfg.end, tri.vertex(v)) < 1e-3 * diam) {
      throw Error(ErrorKind::PathDegenerate, "path passes within 1e-3 diameter of a control point");
    }
  }
  const auto toroids = six_toroids(tri);
  const auto excess = [&](std::size_t k, double t) {
    try {
      return toroid_signed_excess(path_point(cfg, t), toroids[k]);
    } catch (const Error&) {
      throw Error(ErrorKind::PathDegenerate, "path meets the rotation axis of a toroid");
    }
  };

  SweepResult res;
  const auto n = static_cast<std::size_t>(cfg.steps);
  res.samples.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    SweepSample& s = res.samples[i];
    s.t = static_cast<double>(i) / cfg.steps;
    s.point = path_point(cfg, s.t);
    for (std::size_t k = 0; k < 6; ++k) {
      s.excess[k] = excess(k, s.t);
      s.status[k] = s.excess[k] > kDefaultEpsAngle    ? RegionStatus::Inside
                    : s.excess[k] < -kDefaultEpsAngle ? RegionStatus::Outside
                                                      : RegionStatus::OnBoundary;
    }
    s.angles = subtended_angles(s.point, tri);
    const CountInfo c = count_at(tri, s.point);
    s.solved = c.ok;
    s.nSolutions = c.n;
    s.nSSolutions = c.s;
    s.minAbsElement = c.ok ? c.minAbs : 0.0;
  }

  // Sign changes between samples, plus near-zero extrema that may hide a
  // double crossing or a tangency.
  std::vector<Bracket> brackets;
  const auto neg = [](double x) { return x < 0.0; };
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (neg(res.samples[i].excess[k]) != neg(res.samples[i + 1].excess[k])) {
        brackets.push_back({k, res.samples[i].t, res.samples[i + 1].t, false});
      }
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double em = res.samples[i - 1].excess[k];
      const double e0 = res.samples[i].excess[k];
      const double ep = res.samples[i + 1].excess[k];
      if (neg(em) != neg(e0) || neg(e0) != neg(ep)) continue;
      if (!(std::abs(e0) <= std::abs(em) && std::abs(e0) <= std::abs(ep) && std::abs(e0) < 1e-6)) continue;
      const double sgn = e0 < 0.0 ? -1.0 : 1.0;
      const double ta = res.samples[i - 1].t, tb = res.samples[i + 1].t;
      const double tx = golden_min([&](double t) { return sgn * excess(k, t); }, ta, tb);
      const double ex = excess(k, tx);
      if (neg(ex) != neg(e0)) {
        brackets.push_back({k, ta, tx, false});
        brackets.push_back({k, tx, tb, false});
      } else if (std::abs(ex) <= 1e-12) {
        brackets.push_back({k, tx, tx, true});
      }
    }
  }

  for (const auto& b : brackets) {
    CrossingEvent ev;
    ev.toroid = toroids[b.toroid].label;
    if (b.tangent) {
      ev.tCross = b.lo;
      ev.direction = CrossDirection::Tangent;
      ev.verdict = Verdict::Exceptional;
      ev.note = "PathDegenerate: path runs tangent to the toroid";
      res.events.push_back(ev);
      continue;
    }
    const auto f = [&](double t) { return excess(b.toroid, t); };
    double lo = b.lo, hi = b.hi;
    const bool loNeg = f(lo) < 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) < 0.0) == loNeg) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    ev.tCross = 0.5 * (lo + hi);
    ev.direction = loNeg ? CrossDirection::OutsideToInside : CrossDirection::InsideToOutside;

    const Vec3 pc = path_point(cfg, ev.tCross);
    ev.outerSurface = true;
    for (std::size_t k = 0; k < 6; ++k) {
      if (k == b.toroid) continue;
      if (toroid_signed_excess(pc, toroids[k]) >= -kDefaultEpsAngle) ev.outerSurface = false;
    }

    const double tb = std::max(0.0, ev.tCross - cfg.delta);
    const double ta = std::min(1.0, ev.tCross + cfg.delta);
    const CountInfo before = count_at(tri, path_point(cfg, tb));
    const CountInfo after = count_at(tri, path_point(cfg, ta));
    ev.countBefore = before.n;
    ev.countAfter = after.n;
    ev.sCountBefore = before.s;
    ev.sCountAfter = after.s;
    ev.weightedBefore = before.nWeighted;
    ev.weightedAfter = after.nWeighted;
    ev.sPatternBefore = before.sPatterns;
    ev.sPatternAfter = after.sPatterns;
    const CountInfo atLo = count_at(tri, path_point(cfg, lo));
    const CountInfo atHi = count_at(tri, path_point(cfg, hi));
    ev.minAbsElementAtCross = std::min(atLo.minAbs, atHi.minAbs);

    if (!before.ok || !after.ok) {
      ev.verdict = Verdict::Exceptional;
      ev.note = "solver failed next to the crossing: " + (before.ok ? after.error : before.error);
    } else if (before.realRoots != after.realRoots) {
      // A toroid crossing moves at most one root through infinity; a change in
      // the number of real roots means the discriminant surface was crossed too.
      ev.verdict = Verdict::Exceptional;
      ev.note = "real root count " + std::to_string(before.realRoots) + " -> " +
                std::to_string(after.realRoots) + ": discriminant surface crossed in the same bracket";
    } else if (!is_pi_toroid(ev.toroid)) {
      if (ev.outerSurface) {
        const int expected = ev.direction == CrossDirection::OutsideToInside ? -1 : 1;
        ev.verdict = ev.delta_count() == expected ? Verdict::ConsistentThm4 : Verdict::Violation;
      } else {
        ev.verdict = std::abs(ev.delta_count()) == 1 ? Verdict::ConsistentThm3 : Verdict::Violation;
      }
    } else {
      const bool ok = ev.delta_count() == 0 && ev.sCountBefore == ev.sCountAfter &&
                      ev.minAbsElementAtCross < 1e-6 * diam;
      ev.verdict = ok ? Verdict::ConsistentThm5 : Verdict::Violation;
    }
    if (ev.verdict == Verdict::Violation && !tri.is_acute()) {
      ev.verdict = Verdict::Exceptional;
      ev.note = "non-acute triangle: crossing may lie on the exceptional circles";
    }
    res.events.push_back(ev);
  }

  std::sort(res.events.begin(), res.events.end(), [](const CrossingEvent& l, const CrossingEvent& r) {
    if (l.tCross != r.tCross) return l.tCross < r.tCross;
    return l.toroid < r.toroid;
  });
  for (std::size_t i = 0; i < res.events.size(); ++i) {
    for (std::size_t j = 0; j < res.events.size(); ++j) {
      if (i == j || res.events[i].toroid == res.events[j].toroid) continue;
      if (std::abs(res.events[i].tCross - res.events[j].tCross) <= 2.0 * cfg.delta) {
        res.events[i].verdict = Verdict::Exceptional;
        res.events[i].note = "simultaneous crossing of " + std::string(to_string(res.events[j].toroid));
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = res.samples[i];
    const auto& b = res.samples[i + 1];
    if (!a.solved || !b.solved || a.nSolutions == b.nSolutions) continue;
    const bool explained = std::any_of(res.events.begin(), res.events.end(), [&](const CrossingEvent& e) {
      return e.tCross >= a.t - 1e-12 && e.tCross <= b.t + 1e-12;
    });
    if (!explained) res.rootChanges.push_back({a.t, b.t, a.nSolutions, b.nSolutions});
  }
  return res;
}

// ---------------------------------------------------------------------------

TheoremReport verify_crossing_theorem(const ControlTriangle& tri, CrossingTheorem which, int nPaths,
                                      std::uint64_t seed) {
  if (nPaths < 1) throw Error(ErrorKind::InvalidInput, "nPaths must be at least 1");
  const auto t0 = Clock::now();
  using O = TheoremReport::Outcome;
  TheoremReport rep;
  rep.seed = seed;
  rep.theoremId = which == CrossingTheorem::Theorem3   ? "3"
                  : which == CrossingTheorem::Theorem4 ? "4"
                                                       : "5";
  const double diam = tri.diameter();
  const auto toroids = six_toroids(tri);

  std::vector<std::size_t> targets;
  switch (which) {
    case CrossingTheorem::Theorem3: targets = {0, 2, 4}; break;
    case CrossingTheorem::Theorem4: targets = {6}; break;  // any outer-surface piece
    case CrossingTheorem::Theorem5: targets = {1, 3, 5}; break;
  }

  for (std::size_t target : targets) {
    for (int j = 0; j < nPaths; ++j) {
      auto rng = trial_rng(seed, (static_cast<std::uint64_t>(target) << 32) | static_cast<std::uint64_t>(j));
      std::size_t k = target;
      Vec3 m, normal;
      bool found = false;
      for (int attempt = 0; attempt < 100000 && !found; ++attempt) {
        if (which == CrossingTheorem::Theorem4) k = rng() % 6;
        const double phi = uniform(rng, 0.0, kPi);
        const double psi = uniform(rng, 0.0, 2.0 * kPi);
        if (phi <= 0.0) continue;
        m = toroid_point(toroids[k], phi, psi);
        if (min_vertex_distance(m, tri) < 0.05 * diam || std::abs(m.z()) < 0.02 * diam) continue;
        if (which == CrossingTheorem::Theorem4) {
          bool outer = true;
          for (std::size_t o = 0; o < 6 && outer; ++o) {
            if (o != k && toroid_signed_excess(m, toroids[o]) > -1e-6) outer = false;
          }
          if (!outer) continue;
        }
        const Vec3 g = excess_gradient(toroids[k], m, 1e-6 * diam);
        if (!(g.norm() > 1e-9 / diam)) continue;
        normal = g.normalized();
        found = true;
      }
      TrialRecord rec;
      rec.index = static_cast<std::int64_t>(target) * nPaths + j;
      rec.point = m;
      if (!found) {
        rec.note = "no admissible crossing point sampled";
        rep.record(O::Exceptional, std::move(rec));
        continue;
      }
      SweepConfig cfg;
      cfg.tri = tri;
      cfg.start = m - 0.01 * diam * normal;
      cfg.end = m + 0.01 * diam * normal;
      cfg.steps = 100;
      cfg.delta = 1e-4;
      cfg.seed = seed;
      SweepResult sw;
      try {
        sw = sweep_path(cfg);
      } catch (const Error& e) {
        rec.note = e.what();
        rep.record(O::Exceptional, std::move(rec));
        continue;
      }
      const CrossingEvent* ev = nullptr;
      for (const auto& e : sw.events) {
        if (e.toroid != toroids[k].label || e.direction == CrossDirection::Tangent) continue;
        if (!ev || std::abs(e.tCross - 0.5) < std::abs(ev->tCross - 0.5)) ev = &e;
      }
      if (!ev) {
        rec.note = "target crossing not detected";
        rep.record(O::Exceptional, std::move(rec));
        continue;
      }
      rec.nSolutions = ev->countAfter;
      rec.nSSolutions = ev->sCountAfter;
      const int d = ev->delta_count();
      bump(rep, std::string(short_name(ev->toroid)) + "_delta_" + std::to_string(d));
      if (which == CrossingTheorem::Theorem5 && !(ev->minAbsElementAtCross < 1e-6 * diam)) {
        bump(rep, "zero_element_missed");
      }
      if (ev->verdict == Verdict::Exceptional) {
        bump(rep, "exceptional_" + std::string(to_string(ev->toroid)));
        rec.note = ev->note;
        rep.record(O::Exceptional, std::move(rec));
        continue;
      }
      bool ok = false;
      std::ostringstream note;
      switch (which) {
        case CrossingTheorem::Theorem3:
          ok = std::abs(d) == 1;
          note << "count change " << d << " across " << to_string(ev->toroid);
          break;
        case CrossingTheorem::Theorem4:
          ok = ev->outerSurface && ev->direction == CrossDirection::OutsideToInside && d == -1;
          note << "inward outer-surface count change " << d;
          break;
        case CrossingTheorem::Theorem5:
          ok = d == 0 && ev->sCountBefore == ev->sCountAfter && ev->minAbsElementAtCross < 1e-6 * diam;
          if (ev->sPatternBefore != ev->sPatternAfter) bump(rep, "s_pattern_changed");
          note << "count change " << d << ", S count " << ev->sCountBefore << "->" << ev->sCountAfter
               << ", min |s_i| " << ev->minAbsElementAtCross;
          break;
      }
      rec.note = note.str();
      if (!ok && !tri.is_acute()) {
        rep.record(O::Exceptional, std::move(rec));
      } else {
        rep.record(ok ? O::Consistent : O::Violation, std::move(rec));
      }
    }
  }
  rep.wallTime = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------

TheoremReport verify_lemma_suite(const ControlTriangle& tri, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
  const auto t0 = Clock::now();
  using O = TheoremReport::Outcome;
  TheoremReport rep;
  rep.theoremId = "lemmas";
  rep.seed = seed;
  const CircumsphereSpec sphere = circumsphere(tri);
  const ToroidSpec ta = toroid(tri, ToroidLabel::TA);
  const double diam = tri.diameter();

  // chord opposite vertex v: (A,C) for B etc.
  const auto bound_ok = [](double angle, double vertexAngle) {
    if (std::abs(vertexAngle - kPi / 2) < 1e-12) return std::abs(angle - kPi / 2) <= 1e-9;
    const double lo = std::min(vertexAngle, kPi - vertexAngle);
    const double hi = std::max(vertexAngle, kPi - vertexAngle);
    return lo < angle && angle < hi;
  };

  for (int i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    TrialRecord rec;
    rec.index = i;
    std::string note;

    Vec3 p;
    do {
      p = sphere.center + sphere.radius * random_direction(rng);
    } while (min_vertex_distance(p, tri) < 1e-3 * sphere.radius ||
             std::abs(p.z()) < 1e-9 * sphere.radius);
    const bool l1 = bound_ok(subtended_angle(p, tri.A, tri.C), tri.angleB) &&
                    bound_ok(subtended_angle(p, tri.B, tri.C), tri.angleA) &&
                    bound_ok(subtended_angle(p, tri.A, tri.B), tri.angleC);
    if (!l1) {
      bump(rep, "lemma1_violations");
      note += "circumsphere angle bound fails; ";
    }

    Vec3 m;
    do {
      const double phi = uniform(rng, 0.0, kPi);
      const double psi = uniform(rng, 0.0, 2.0 * kPi);
      if (phi <= 0.0) continue;
      m = toroid_point(ta, phi, psi);
    } while (min_vertex_distance(m, tri) < 1e-3 * diam);
    const double beta = subtended_angle(m, tri.A, tri.C);
    const double gamma = subtended_angle(m, tri.A, tri.B);
    const bool l7 = cones_intersect(kPi - beta, kPi - gamma, tri.angleA);
    const ConeDistanceForm form = cone_condition_from_distances(m, tri);
    const bool l7d = form.value <= 1e-12 * form.scale;
    if (!l7) {
      bump(rep, "lemma7_angle_violations");
      note += "cones do not intersect; ";
    }
    if (!l7d) {
      bump(rep, "lemma7_distance_violations");
      note += "distance form positive; ";
    }
    rec.point = m;
    rec.note = note;
    rep.record(l1 && l7 && l7d ? O::Consistent : O::Violation, std::move(rec));
  }
  rep.tallies.try_emplace("lemma1_violations", 0);
  rep.tallies.try_emplace("lemma7_angle_violations", 0);
  rep.tallies.try_emplace("lemma7_distance_violations", 0);
  rep.wallTime = seconds_since(t0);
  return rep;
}

}  // namespace p3p
