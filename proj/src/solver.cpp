#include "p3p/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace p3p {

namespace {

constexpr double kPi = std::numbers::pi;

double constraint_term(double si, double sj, double cosAngle, double d) {
  return std::abs(si * si + sj * sj - 2.0 * cosAngle * si * sj - d * d) / (1.0 + d * d);
}

// Newton on the three distance constraints, started from the back-substituted
// triplet. Steps are kept only while the residual shrinks.
void refine_depths(std::array<double, 3>& s, const ControlTriangle& tri, double ca, double cb,
                   double cg) {
  const auto eval = [&](const std::array<double, 3>& x) {
    return Eigen::Vector3d(x[0] * x[0] + x[1] * x[1] - 2.0 * cg * x[0] * x[1] - tri.c * tri.c,
                           x[0] * x[0] + x[2] * x[2] - 2.0 * cb * x[0] * x[2] - tri.b * tri.b,
                           x[1] * x[1] + x[2] * x[2] - 2.0 * ca * x[1] * x[2] - tri.a * tri.a);
  };
  const double scale = 1.0 + std::max({tri.a, tri.b, tri.c}) * std::max({tri.a, tri.b, tri.c});
  Eigen::Vector3d f = eval(s);
  if (f.lpNorm<Eigen::Infinity>() > 1e-4 * scale) return;
  for (int it = 0; it < 6; ++it) {
    Eigen::Matrix3d J;
    J << 2.0 * (s[0] - cg * s[1]), 2.0 * (s[1] - cg * s[0]), 0.0,
        2.0 * (s[0] - cb * s[2]), 0.0, 2.0 * (s[2] - cb * s[0]),
        0.0, 2.0 * (s[1] - ca * s[2]), 2.0 * (s[2] - ca * s[1]);
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(J);
    if (!lu.isInvertible()) return;
    const Eigen::Vector3d step = lu.solve(-f);
    const std::array<double, 3> next{s[0] + step(0), s[1] + step(1), s[2] + step(2)};
    const Eigen::Vector3d fn = eval(next);
    if (!(fn.lpNorm<Eigen::Infinity>() < f.lpNorm<Eigen::Infinity>())) return;
    s = next;
    f = fn;
  }
}

}  // namespace

std::string_view to_string(TripletClass cls) {
  switch (cls) {
    case TripletClass::Solution: return "Solution";
    case TripletClass::SSolution: return "SSolution";
    case TripletClass::DegenerateZero: return "DegenerateZero";
  }
  return "?";
}

std::string_view to_string(SupplementPair pair) {
  switch (pair) {
    case SupplementPair::AlphaBeta: return "alpha,beta";
    case SupplementPair::AlphaGamma: return "alpha,gamma";
    case SupplementPair::BetaGamma: return "beta,gamma";
  }
  return "?";
}

double DepthTriplet::min_abs_element() const {
  return std::min({std::abs(s1), std::abs(s2), std::abs(s3)});
}

int SolveReport::solution_count_weighted() const {
  int n = 0;
  for (const auto& t : solutions) n += t.rootMultiplicity;
  return n;
}

int SolveReport::s_solution_count_weighted() const {
  int n = 0;
  for (const auto& t : sSolutions) n += t.rootMultiplicity;
  return n;
}

double SolveReport::min_abs_element() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : triplets) m = std::min(m, t.min_abs_element());
  return m;
}

double default_zero_tol(const ControlTriangle& tri) { return 1e-9 * tri.mean_side(); }

double constraint_residual(double s1, double s2, double s3, const ControlTriangle& tri,
                           const ViewAngles& ang) {
  return std::max({constraint_term(s1, s2, std::cos(ang.gamma), tri.c),
                   constraint_term(s1, s3, std::cos(ang.beta), tri.b),
                   constraint_term(s2, s3, std::cos(ang.alpha), tri.a)});
}

RawTriplet canonicalize_triplet(const RawTriplet& t) {
  const int negatives = (t.s1 < 0) + (t.s2 < 0) + (t.s3 < 0);
  if (negatives >= 2) return {-t.s1, -t.s2, -t.s3};
  return t;
}

TripletTag classify_triplet(const RawTriplet& raw, double zeroTol) {
  const RawTriplet t = canonicalize_triplet(raw);
  const std::array<double, 3> s{t.s1, t.s2, t.s3};
  TripletTag tag;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(s[i]) <= zeroTol) {
      tag.cls = TripletClass::DegenerateZero;
      tag.zeroIndex = i + 1;
      return tag;
    }
  }
  if (t.s1 > 0 && t.s2 > 0 && t.s3 > 0) {
    tag.cls = TripletClass::Solution;
    return tag;
  }
  tag.cls = TripletClass::SSolution;
  if (t.s3 < 0) {
    tag.pair = SupplementPair::AlphaBeta;
  } else if (t.s2 < 0) {
    tag.pair = SupplementPair::AlphaGamma;
  } else {
    tag.pair = SupplementPair::BetaGamma;
  }
  return tag;
}

std::vector<DepthTriplet> back_substitute_branches(double v, const ControlTriangle& tri,
                                                  const ViewAngles& ang, std::optional<double> zeroTol,
                                                  bool everyBranch) {
  if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, "root must be finite");
  const double ca = std::cos(ang.alpha);
  const double cb = std::cos(ang.beta);
  const double cg = std::cos(ang.gamma);
  const double a2 = tri.a * tri.a;
  const double c2 = tri.c * tri.c;

  const double q = 1.0 - 2.0 * v * cb + v * v;
  if (!(q > 0.0)) throw Error(ErrorKind::NoRealTriplet, "1 - 2 v cos(beta) + v^2 is not positive");
  const double s1 = tri.b / std::sqrt(q);
  const double s3 = v * s1;
  const double s1sq = s1 * s1;

  const auto third = [&](double uu) {
    return std::abs(s1sq * (uu * uu + v * v - 2.0 * uu * v * ca) - a2);
  };
  std::vector<double> us;
  const double denom = v * ca - cg;
  const bool linear = std::abs(denom) > 1e-10;
  if (linear) us.push_back((c2 - a2 - s1sq * (1.0 - v * v)) / (2.0 * s1sq * denom));
  // u^2 - 2 u cos(gamma) + 1 - c^2 / s1^2 = 0; used when the linear relation
  // is singular, or when one of its branches fits the third constraint better.
  const double disc = cg * cg - 1.0 + c2 / s1sq;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    for (double cand : {cg + r, cg - r}) {
      if (!linear || everyBranch) {
        us.push_back(cand);
      } else if (third(cand) < third(us.front())) {
        us.front() = cand;
      }
    }
  } else if (!linear) {
    throw Error(ErrorKind::NoRealTriplet, "no real ratio u for this root");
  }

  std::vector<DepthTriplet> out;
  for (double u : us) {
    std::array<double, 3> s{s1, u * s1, s3};
    refine_depths(s, tri, ca, cb, cg);
    const RawTriplet canon = canonicalize_triplet({s[0], s[1], s[2]});
    DepthTriplet t;
    t.s1 = canon.s1;
    t.s2 = canon.s2;
    t.s3 = canon.s3;
    t.v = v;
    t.u = s[1] / s[0];
    t.tag = classify_triplet(canon, zeroTol.value_or(default_zero_tol(tri)));
    t.residual = constraint_residual(t.s1, t.s2, t.s3, tri, ang);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const DepthTriplet& o) {
      return std::abs(o.s1 - t.s1) + std::abs(o.s2 - t.s2) + std::abs(o.s3 - t.s3) <=
             1e-9 * tri.mean_side();
    });
    if (!dup) out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DepthTriplet& l, const DepthTriplet& r) { return l.residual < r.residual; });
  return out;
}

DepthTriplet back_substitute(double v, const ControlTriangle& tri, const ViewAngles& ang,
                             std::optional<double> zeroTol) {
  return back_substitute_branches(v, tri, ang, zeroTol).front();
}

ViewAngles supplementary_angles(const ViewAngles& ang, SupplementPair pair) {
  ViewAngles out = ang;
  switch (pair) {
    case SupplementPair::AlphaBeta:
      out.alpha = kPi - ang.alpha;
      out.beta = kPi - ang.beta;
      break;
    case SupplementPair::AlphaGamma:
      out.alpha = kPi - ang.alpha;
      out.gamma = kPi - ang.gamma;
      break;
    case SupplementPair::BetaGamma:
      out.beta = kPi - ang.beta;
      out.gamma = kPi - ang.gamma;
      break;
  }
  return out;
}

SolveReport solve_p3p(const ControlTriangle& tri, const ViewAngles& ang, const SolveOptions& opts) {
  for (double x : {ang.alpha, ang.beta, ang.gamma}) {
    if (!(x > 0.0 && x < kPi)) throw Error(ErrorKind::DomainError, "view angles must lie in (0, pi)");
  }
  SolveReport rep;
  rep.quartic = grunert_coefficients(tri, ang);
  rep.nonRealizable = !ang.realizable();
  if (std::abs(rep.quartic.A4) <= 1e-14 * rep.quartic.max_abs_coeff()) {
    throw Error(ErrorKind::OnToroidPair,
                "alpha matches angle A or its supplement: optical center on toroid pair A "
                "(T_A, T_pi-A)");
  }
  rep.rootSet = real_roots(rep.quartic, opts.tolCluster);
  if (rep.rootSet.roots.empty()) {
    throw Error(ErrorKind::NoRealRoots, "Grunert's quartic has no real roots");
  }
  const double zeroTol = opts.zeroTol.value_or(default_zero_tol(tri));
  std::vector<Root> kept;
  for (const auto& root : rep.rootSet.roots) {
    std::optional<RootFailure> failure;
    try {
      // A repeated root can carry two distinct triplets sharing v (mirror
      // symmetric configurations); keep both when both fit.
      auto branches = back_substitute_branches(root.value, tri, ang, zeroTol, root.multiplicity >= 2);
      if (branches.size() >= 2 && root.multiplicity >= 2 && branches[1].residual <= opts.residualTol) {
        branches.resize(2);
        branches[0].rootMultiplicity = root.multiplicity / 2;
        branches[1].rootMultiplicity = root.multiplicity - root.multiplicity / 2;
      } else {
        branches.resize(1);
        branches[0].rootMultiplicity = root.multiplicity;
      }
      DepthTriplet& t = branches.front();
      if (t.residual <= opts.residualTol) {
        kept.push_back(root);
        for (const auto& b : branches) {
          rep.triplets.push_back(b);
          if (b.tag.cls == TripletClass::Solution) rep.solutions.push_back(b);
          if (b.tag.cls == TripletClass::SSolution) rep.sSolutions.push_back(b);
        }
        continue;
      }
      std::ostringstream os;
      os << "residual " << t.residual << " exceeds " << opts.residualTol;
      failure = RootFailure{root.value, root.multiplicity, ErrorKind::ResidualTooLarge, os.str()};
    } catch (const Error& e) {
      failure = RootFailure{root.value, root.multiplicity, e.kind(), e.what()};
    }
    if (root.tangent) {
      // Indistinguishable from a nearby complex pair.
      ++rep.droppedTangencies;
      rep.rootSet.complexPairCount += root.multiplicity / 2;
      continue;
    }
    kept.push_back(root);
    rep.failures.push_back(*failure);
  }
  rep.rootSet.roots = std::move(kept);
  if (rep.rootSet.roots.empty()) {
    throw Error(ErrorKind::NoRealRoots, "Grunert's quartic has no real roots");
  }
  return rep;
}

std::vector<Vec3> positions_from_distances(double s1, double s2, double s3,
                                           const ControlTriangle& tri) {
  const double c = tri.c;
  const Vec3& C = tri.C;
  const double x = (s1 * s1 - s2 * s2 + c * c) / (2.0 * c);
  const double y = (s1 * s1 - s3 * s3 + C.squaredNorm() - 2.0 * C.x() * x) / (2.0 * C.y());
  const double z2 = s1 * s1 - x * x - y * y;
  const double smax = std::max({s1, s2, s3});
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * smax * smax;
  if (z2 < -tol) {
    throw Error(ErrorKind::NoIntersection, "the three distance spheres do not intersect");
  }
  if (z2 <= tol) return {Vec3(x, y, 0.0)};
  const double z = std::sqrt(z2);
  return {Vec3(x, y, z), Vec3(x, y, -z)};
}

std::vector<Vec3> positions_from_triplet(const DepthTriplet& t, const ControlTriangle& tri) {
  if (!(t.s1 > 0 && t.s2 > 0 && t.s3 > 0)) {
    throw Error(ErrorKind::DomainError, "positions need a triplet with all depths positive");
  }
  return positions_from_distances(t.s1, t.s2, t.s3, tri);
}

}  // namespace p3p
