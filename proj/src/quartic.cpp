#include "p3p/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "p3p/error.hpp"

namespace p3p {

namespace {

using Real = long double;

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

using Poly = std::vector<Real>;  // low order first

Real eval(const Poly& p, Real x) {
  Real r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// Running-error style bound on the rounding error of Horner evaluation.
Real eval_bound(const Poly& p, Real x) {
  const Real ax = std::abs(x);
  Real r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * ax + std::abs(*it);
  return 16.0 * static_cast<Real>(p.size()) * kEps * r;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<Real>(i) * p[i]);
  return d;
}

int sign(Real x) { return (x > 0) - (x < 0); }

Real bisect(const Poly& p, Real lo, Real hi) {
  const int slo = sign(eval(p, lo));
  for (int it = 0; it < 2200; ++it) {
    const Real mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const Real fm = eval(p, mid);
    if (fm == 0.0) return mid;
    if (sign(fm) == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(eval(p, lo)) <= std::abs(eval(p, hi)) ? lo : hi;
}

Real newton_polish(const Poly& p, Real x) {
  const Poly d = derivative(p);
  Real fx = eval(p, x);
  for (int it = 0; it < 4 && fx != 0.0; ++it) {
    const Real dx = eval(d, x);
    if (dx == 0.0) break;
    const Real xn = x - fx / dx;
    const Real fn = eval(p, xn);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = xn;
    fx = fn;
  }
  return x;
}

// Number of leading derivatives that vanish at x, plus one.
int multiplicity_at(const Poly& p, Real x) {
  int m = 1;
  Poly d = derivative(p);
  while (d.size() > 1) {
    const Real scale = eval_bound(d, x) / (16.0 * static_cast<Real>(d.size()) * kEps);
    if (std::abs(eval(d, x)) > 1e-6 * scale) break;
    ++m;
    d = derivative(d);
  }
  return m;
}

struct Candidate {
  Real x = 0.0;
  int mult = 1;
  bool tangent = false;
};

std::vector<Candidate> isolate(const Poly& p, Real lo, Real hi) {
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) {
    const Real x = -p[0] / p[1];
    if (x >= lo && x <= hi) return {{x, 1, false}};
    return {};
  }
  std::vector<Real> pts{lo};
  for (const auto& c : isolate(derivative(p), lo, hi)) {
    if (c.x > pts.back() && c.x < hi) pts.push_back(c.x);
  }
  pts.push_back(hi);

  std::vector<Real> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(p, pts[i]);

  std::vector<Candidate> out;
  std::vector<bool> rootIn(pts.size() - 1, false);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (sign(vals[i]) * sign(vals[i + 1]) < 0) {
      out.push_back({newton_polish(p, bisect(p, pts[i], pts[i + 1])), 1, false});
      rootIn[i] = true;
    }
  }
  int crossings = static_cast<int>(out.size());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (rootIn[i - 1] || rootIn[i]) continue;
    if (std::abs(vals[i]) <= eval_bound(p, pts[i])) {
      const int room = static_cast<int>(deg) - crossings;
      if (room < 2) continue;
      const int m = std::min(room, std::max(2, multiplicity_at(p, pts[i])));
      out.push_back({pts[i], m, true});
      crossings += m;
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& l, const Candidate& r) { return l.x < r.x; });
  return out;
}

}  // namespace

double GrunertQuartic::max_abs_coeff() const {
  return std::max({std::abs(A4), std::abs(A3), std::abs(A2), std::abs(A1), std::abs(A0)});
}

double GrunertQuartic::operator()(double v) const { return evaluate(coeffs(), v); }

int RootSet::count_with_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0,
                         [](int acc, const Root& r) { return acc + r.multiplicity; });
}

int RootSet::positive_count_with_multiplicity() const {
  int n = 0;
  for (const auto& r : roots) {
    if (r.value > 0) n += r.multiplicity;
  }
  return n;
}

double evaluate(const QuarticCoeffs& c, double x) {
  return (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
}

GrunertQuartic grunert_coefficients(const ControlTriangle& tri, const ViewAngles& ang) {
  const Real a2 = static_cast<Real>(tri.a) * tri.a;
  const Real b2 = static_cast<Real>(tri.b) * tri.b;
  const Real c2 = static_cast<Real>(tri.c) * tri.c;
  const Real ca = std::cos(static_cast<Real>(ang.alpha));
  const Real cb = std::cos(static_cast<Real>(ang.beta));
  const Real cg = std::cos(static_cast<Real>(ang.gamma));
  // (b^2 + c^2 - a^2) / 2bc, and cyclic
  const Real cA = (b2 + c2 - a2) / (2.0L * tri.b * tri.c);
  const Real cC = (a2 + b2 - c2) / (2.0L * tri.a * tri.b);

  const Real k = (a2 - c2) / b2;
  const Real p = (a2 + c2) / b2;

  GrunertQuartic q;
  q.sourceTriangle = tri;
  q.sourceAngles = ang;
  auto& e = q.extended;
  e[4] = 4.0L * c2 / b2 * (cA * cA - ca * ca);
  e[3] = 4.0L * (k * (1.0L - k) * cb - (1.0L - p) * ca * cg + 2.0L * c2 / b2 * ca * ca * cb);
  e[2] = 2.0L * (k * k - 1.0L + 2.0L * k * k * cb * cb + 2.0L * (b2 - c2) / b2 * ca * ca -
                 4.0L * p * ca * cb * cg + 2.0L * (b2 - a2) / b2 * cg * cg);
  e[1] = 4.0L * (-k * (1.0L + k) * cb + 2.0L * a2 / b2 * cg * cg * cb - (1.0L - p) * ca * cg);
  e[0] = 4.0L * a2 / b2 * (cC * cC - cg * cg);
  q.A4 = static_cast<double>(e[4]);
  q.A3 = static_cast<double>(e[3]);
  q.A2 = static_cast<double>(e[2]);
  q.A1 = static_cast<double>(e[1]);
  q.A0 = static_cast<double>(e[0]);
  return q;
}

RootSet real_roots(const QuarticCoeffsExt& coeffs, double tolCluster) {
  if (!(tolCluster > 0.0)) throw Error(ErrorKind::DomainError, "tolCluster must be positive");
  Real maxCoeff = 0.0;
  for (Real c : coeffs) {
    if (!std::isfinite(c)) throw Error(ErrorKind::DomainError, "non-finite quartic coefficient");
    maxCoeff = std::max(maxCoeff, std::abs(c));
  }
  if (std::abs(coeffs[4]) <= 1e-14L * maxCoeff || maxCoeff == 0.0L) {
    throw Error(ErrorKind::DegreeDrop, "leading coefficient vanishes; quartic degenerates");
  }

  const Poly p(coeffs.begin(), coeffs.end());
  Real bound = 0.0;
  for (int i = 0; i < 4; ++i) bound = std::max(bound, std::abs(coeffs[i] / coeffs[4]));
  bound += 1.0L;

  const auto cands = isolate(p, -bound, bound);

  struct Cluster {
    Real sum = 0.0;
    int count = 0;
    int mult = 0;
    bool tangent = false;
  };
  std::vector<Cluster> clusters;
  Real last = 0.0;
  for (const auto& c : cands) {
    if (clusters.empty() || c.x - last > tolCluster * std::max(Real{1}, std::abs(last))) {
      clusters.push_back({});
    }
    auto& cl = clusters.back();
    cl.sum += c.x;
    cl.count += 1;
    cl.mult += c.mult;
    cl.tangent |= c.tangent;
    last = c.x;
  }

  RootSet rs;
  int total = 0;
  for (auto& cl : clusters) total += cl.mult;
  if (total % 2 == 1) {
    // A tangency picked up as even multiplicity next to an odd crossing means
    // an odd-order root split by rounding; give it the missing unit.
    for (auto& cl : clusters) {
      if (cl.tangent) {
        cl.mult += 1;
        ++total;
        break;
      }
    }
  }
  for (const auto& cl : clusters) {
    rs.roots.push_back({static_cast<double>(cl.sum / cl.count), cl.mult, cl.tangent && cl.count == 1});
  }
  rs.complexPairCount = std::max(0, (4 - total) / 2);
  return rs;
}

RootSet real_roots(const QuarticCoeffs& coeffs, double tolCluster) {
  QuarticCoeffsExt ext;
  std::copy(coeffs.begin(), coeffs.end(), ext.begin());
  return real_roots(ext, tolCluster);
}

RootSet real_roots(const GrunertQuartic& q, double tolCluster) {
  return real_roots(q.extended, tolCluster);
}

}  // namespace p3p
