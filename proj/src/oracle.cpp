#include "p3p/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "p3p/error.hpp"

namespace p3p {

namespace {

constexpr double kPi = std::numbers::pi;

struct BaseToroid {
  ToroidSpec spec;
  int other[2] = {0, 0};          // view-angle indices checked as residuals
  Vec3 chordOf[2][2];             // chord endpoints for those angles
  double target[2] = {0.0, 0.0};
};

// Chord subtending view angle `i` is the edge opposite vertex `i`.
std::array<Vec3, 2> chord_for(const ControlTriangle& tri, int i) {
  switch (i) {
    case 0: return {tri.B, tri.C};
    case 1: return {tri.A, tri.C};
    default: return {tri.A, tri.B};
  }
}

BaseToroid make_base(const ControlTriangle& tri, const ViewAngles& ang) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (ang[i] > ang[k]) k = i;
  }
  const auto chord = chord_for(tri, k);
  Vec3 ref = tri.vertex(k) - chord[0];
  const Vec3 e = (chord[1] - chord[0]).normalized();
  ref -= ref.dot(e) * e;

  BaseToroid b;
  b.spec = make_toroid(chord[0], chord[1], ang[k], ref);
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    const auto c = chord_for(tri, i);
    b.other[n] = i;
    b.chordOf[n][0] = c[0];
    b.chordOf[n][1] = c[1];
    b.target[n] = ang[i];
    ++n;
  }
  return b;
}

Eigen::Vector2d residual(const BaseToroid& b, double phi, double psi) {
  const Vec3 p = toroid_point(b.spec, phi, psi);
  return {subtended_angle(p, b.chordOf[0][0], b.chordOf[0][1]) - b.target[0],
          subtended_angle(p, b.chordOf[1][0], b.chordOf[1][1]) - b.target[1]};
}

double wrap_psi(double psi) {
  psi = std::fmod(psi, 2.0 * kPi);
  if (psi < 0) psi += 2.0 * kPi;
  return psi;
}

struct Refined {
  bool ok = false;
  double phi = 0.0;
  double psi = 0.0;
};

// Damped Newton on the two angle residuals over (phi, psi).
Refined refine(const BaseToroid& b, double phi, double psi) {
  constexpr double h = 1e-7;
  Eigen::Vector2d r = residual(b, phi, psi);
  for (int it = 0; it < 50; ++it) {
    if (r.lpNorm<Eigen::Infinity>() < 1e-14) break;
    if (phi - h <= 0.0 || phi + h >= kPi) return {};
    Eigen::Matrix2d J;
    J.col(0) = (residual(b, phi + h, psi) - residual(b, phi - h, psi)) / (2 * h);
    J.col(1) = (residual(b, phi, wrap_psi(psi + h)) - residual(b, phi, wrap_psi(psi - h))) / (2 * h);
    const double det = J.determinant();
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return {};
    const Eigen::Vector2d step = -J.inverse() * r;

    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving) {
      const double np = phi + lambda * step(0);
      const double ns = wrap_psi(psi + lambda * step(1));
      if (np > 0.0 && np < kPi) {
        const Eigen::Vector2d nr = residual(b, np, ns);
        if (nr.norm() < r.norm()) {
          phi = np;
          psi = ns;
          r = nr;
          improved = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!improved) break;
    if (lambda * step.norm() < 1e-16) break;
  }
  if (r.lpNorm<Eigen::Infinity>() > 1e-9) return {};
  return {true, phi, psi};
}

bool lex_less(const Vec3& l, const Vec3& r) {
  if (l.x() != r.x()) return l.x() < r.x();
  if (l.y() != r.y()) return l.y() < r.y();
  return l.z() < r.z();
}

}  // namespace

Vec3 toroid_point(const ToroidSpec& t, double phi, double psi) {
  if (!(phi > 0.0 && phi < kPi)) throw Error(ErrorKind::DomainError, "phi must lie in (0, pi)");
  if (!(psi >= 0.0 && psi < 2.0 * kPi)) {
    throw Error(ErrorKind::DomainError, "psi must lie in [0, 2 pi)");
  }
  const Vec3 chord = t.chordEnd - t.chordStart;
  const double len = chord.norm();
  const Vec3 e = chord / len;
  const Vec3 mid = 0.5 * (t.chordStart + t.chordEnd);
  const Vec3 n = std::cos(psi) * t.referenceDir + std::sin(psi) * e.cross(t.referenceDir);
  const double theta = t.inscribedAngle;
  const double radius = len / (2.0 * std::sin(theta));
  const double offset = len / (2.0 * std::tan(theta));
  const double xi = (theta - kPi / 2) + (phi / kPi) * (2.0 * kPi - 2.0 * theta);
  return mid + offset * n + radius * (std::cos(xi) * e + std::sin(xi) * n);
}

OracleResult brute_force_solve(const ControlTriangle& tri, const ViewAngles& ang, int nPhi,
                               int nPsi) {
  if (nPhi < kMinOracleGrid || nPsi < kMinOracleGrid) {
    throw Error(ErrorKind::InvalidInput, "oracle grid must be at least 64 x 64");
  }
  for (double x : {ang.alpha, ang.beta, ang.gamma}) {
    if (!(x > 0.0 && x < kPi)) throw Error(ErrorKind::DomainError, "view angles must lie in (0, pi)");
  }
  const BaseToroid base = make_base(tri, ang);
  const double dPhi = kPi / nPhi;
  const double dPsi = 2.0 * kPi / nPsi;

  std::vector<Eigen::Vector2d> grid(static_cast<std::size_t>(nPhi) * nPsi);
  const auto at = [nPsi](int m, int n) { return static_cast<std::size_t>(m) * nPsi + n; };
  for (int m = 0; m < nPhi; ++m) {
    const double phi = (m + 0.5) * dPhi;
    for (int n = 0; n < nPsi; ++n) grid[at(m, n)] = residual(base, phi, n * dPsi);
  }

  std::vector<Refined> found;
  for (int m = 0; m + 1 < nPhi; ++m) {
    for (int n = 0; n < nPsi; ++n) {
      const int n1 = (n + 1) % nPsi;
      const std::array<const Eigen::Vector2d*, 4> c{&grid[at(m, n)], &grid[at(m + 1, n)],
                                                    &grid[at(m, n1)], &grid[at(m + 1, n1)]};
      bool straddles = true;
      for (int k = 0; k < 2 && straddles; ++k) {
        double lo = (*c[0])(k), hi = (*c[0])(k);
        for (const auto* v : c) {
          lo = std::min(lo, (*v)(k));
          hi = std::max(hi, (*v)(k));
        }
        straddles = lo <= 0.0 && hi >= 0.0;
      }
      if (!straddles) continue;
      const Refined r = refine(base, (m + 1.0) * dPhi, wrap_psi((n + 0.5) * dPsi));
      if (r.ok) found.push_back(r);
    }
  }

  std::vector<ToroidSample> samples;
  samples.reserve(found.size());
  for (const auto& f : found) samples.push_back({f.phi, f.psi, toroid_point(base.spec, f.phi, f.psi)});
  std::sort(samples.begin(), samples.end(),
            [](const ToroidSample& l, const ToroidSample& r) { return lex_less(l.point, r.point); });

  const double dedup = 1e-4 * tri.diameter();
  OracleResult out;
  out.nPhi = nPhi;
  out.nPsi = nPsi;
  out.baseAngle = 3 - base.other[0] - base.other[1];
  for (const auto& s : samples) {
    const bool dup = std::any_of(out.samples.begin(), out.samples.end(), [&](const ToroidSample& k) {
      return (k.point - s.point).norm() < dedup;
    });
    if (dup) continue;
    out.samples.push_back(s);
    out.centers.push_back(s.point);
    out.triplets.push_back({(s.point - tri.A).norm(), (s.point - tri.B).norm(),
                            (s.point - tri.C).norm()});
  }
  for (std::size_t i = 0; i < out.samples.size() && !out.gridTooCoarse; ++i) {
    for (std::size_t j = i + 1; j < out.samples.size(); ++j) {
      const double dphi = std::abs(out.samples[i].phi - out.samples[j].phi);
      double dpsi = std::abs(out.samples[i].psi - out.samples[j].psi);
      dpsi = std::min(dpsi, 2.0 * kPi - dpsi);
      if (dphi < 3.0 * dPhi && dpsi < 3.0 * dPsi) {
        out.gridTooCoarse = true;
        break;
      }
    }
  }
  return out;
}

MatchReport compare_positions(const std::vector<Vec3>& solverPoints, const OracleResult& oracle,
                              double tol) {
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < solverPoints.size(); ++i) {
    for (std::size_t j = 0; j < oracle.centers.size(); ++j) {
      const double d = (solverPoints[i] - oracle.centers[j]).norm();
      if (d <= tol) pairs.push_back({d, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
    if (l.d != r.d) return l.d < r.d;
    if (l.i != r.i) return l.i < r.i;
    return l.j < r.j;
  });
  std::vector<bool> usedS(solverPoints.size(), false);
  std::vector<bool> usedO(oracle.centers.size(), false);
  MatchReport m;
  m.solverPositions = static_cast<int>(solverPoints.size());
  m.oracleCenters = static_cast<int>(oracle.centers.size());
  for (const auto& p : pairs) {
    if (usedS[p.i] || usedO[p.j]) continue;
    usedS[p.i] = usedO[p.j] = true;
    m.distances.push_back(p.d);
    m.maxDistance = std::max(m.maxDistance, p.d);
  }
  for (std::size_t i = 0; i < solverPoints.size(); ++i) {
    if (!usedS[i]) m.unmatchedSolver.push_back(solverPoints[i]);
  }
  for (std::size_t j = 0; j < oracle.centers.size(); ++j) {
    if (!usedO[j]) m.unmatchedOracle.push_back(oracle.centers[j]);
  }
  m.perfect = m.unmatchedSolver.empty() && m.unmatchedOracle.empty();
  return m;
}

MatchReport compare(const SolveReport& report, const ControlTriangle& tri,
                    const OracleResult& oracle, double tol) {
  std::vector<Vec3> pts;
  for (const auto& s : report.solutions) {
    for (const auto& p : positions_from_triplet(s, tri)) pts.push_back(p);
  }
  return compare_positions(pts, oracle, tol);
}

}  // namespace p3p
