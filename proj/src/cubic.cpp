#include "sweepout/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweepout {

namespace {

double eval_profile(double a3, double a4, double a5, double z) {
  return a5 * z * z * z + a3 * z + a4;
}

// One Newton polish pass, safeguarded: reject steps that grow the residual.
double polish(double a3, double a4, double a5, double z) {
  for (int it = 0; it < 40; ++it) {
    const double f = eval_profile(a3, a4, a5, z);
    const double df = 3.0 * a5 * z * z + a3;
    if (f == 0.0 || std::abs(df) < 1e-300) break;
    const double step = f / df;
    const double z2 = z - step;
    if (std::abs(eval_profile(a3, a4, a5, z2)) >= std::abs(f)) break;
    z = z2;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

CubicProfile classify_cubic(double a3, double a4, double a5) {
  if (a3 == 0.0 && a4 == 0.0 && a5 == 0.0)
    throw std::invalid_argument("classify_cubic: zero profile");

  CubicProfile out;

  if (a5 == 0.0) {
    if (a3 == 0.0) {
      out.kind = CubicKind::Degenerate;  // constant a4 != 0: no roots
      return out;
    }
    out.kind = CubicKind::OneSimple;
    out.roots.push_back({-a4 / a3, 1});
    return out;
  }

  // Monic depressed cubic z^3 + p z + q.
  const double p = a3 / a5;
  const double q = a4 / a5;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  out.discriminant = disc;
  const double scale = std::max(4.0 * std::abs(p * p * p) + 27.0 * q * q, 1e-300);

  if (std::abs(disc) < 1e-12 * scale) {
    if (std::abs(p) < 1e-12 && std::abs(q) < 1e-12) {
      out.kind = CubicKind::Triple;
      out.roots.push_back({0.0, 3});
      return out;
    }
    // Double root r and simple root -2r with p = -3r^2, q = 2r^3.
    const double r = 3.0 * q / (-2.0 * p);
    out.kind = CubicKind::SimplePlusDouble;
    out.roots.push_back({polish(a3, a4, a5, -2.0 * r), 1});
    out.roots.push_back({r, 2});
  } else if (disc > 0.0) {
    // Three distinct real roots: trigonometric form (p < 0 here).
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    out.kind = CubicKind::ThreeSimple;
    for (int k = 0; k < 3; ++k) {
      const double z = m * std::cos(theta - 2.0 * M_PI * k / 3.0);
      out.roots.push_back({polish(a3, a4, a5, z), 1});
    }
  } else {
    // One real root: Cardano with stable branch selection.
    const double halfq = q / 2.0;
    const double rad = std::sqrt(halfq * halfq + p * p * p / 27.0);
    const double u = std::cbrt(-halfq + (halfq >= 0 ? -rad : rad));
    double z = u == 0.0 ? 0.0 : u - p / (3.0 * u);
    if (u == 0.0) z = std::cbrt(-q);
    out.kind = CubicKind::OneSimple;
    out.roots.push_back({polish(a3, a4, a5, z), 1});
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const CubicRoot& a, const CubicRoot& b) { return a.z < b.z; });
  return out;
}

int sturm_root_count(double a3, double a4, double a5, double lo, double hi) {
  if (a5 == 0.0) {
    if (a3 == 0.0) return 0;
    const double r = -a4 / a3;
    return (r > lo && r <= hi) ? 1 : 0;
  }
  const double p = a3 / a5;
  const double q = a4 / a5;

  // Sturm chain of z^3 + p z + q (square-free case):
  //   p0 = z^3 + p z + q, p1 = 3z^2 + p,
  //   p2 = -(2p/3) z - q, p3 = -(p0 rem p1 rem chain constant).
  auto signs_at = [&](double z) {
    double v0 = z * z * z + p * z + q;
    double v1 = 3.0 * z * z + p;
    double v2 = -(2.0 * p / 3.0) * z - q;
    double v3;
    if (p == 0.0) {
      v2 = -q;
      v3 = 0.0;
    } else {
      // remainder of p1 by p2, negated
      const double A = -2.0 * p / 3.0, B = -q;
      const double root = -B / A;
      v3 = -(3.0 * root * root + p);
    }
    int count = 0;
    double seq[4] = {v0, v1, v2, v3};
    int prev = 0;
    for (double v : seq) {
      const int s = sign_of(v);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return signs_at(lo) - signs_at(hi);
}

const char* cubic_kind_name(CubicKind k) {
  switch (k) {
    case CubicKind::OneSimple: return "OneSimple";
    case CubicKind::ThreeSimple: return "ThreeSimple";
    case CubicKind::SimplePlusDouble: return "SimplePlusDouble";
    case CubicKind::Triple: return "Triple";
    case CubicKind::Degenerate: return "Degenerate";
  }
  return "?";
}

}  // namespace sweepout
