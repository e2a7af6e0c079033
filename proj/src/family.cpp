#include "sweepout/family.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "sweepout/cubic.hpp"

namespace sweepout {

Vec5 ProjectivePoint4::canonicalize(Vec5 v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("projective point cannot be zero");
  v /= n;
  for (int i = 0; i < 5; ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

Rotation3::Rotation3(const Mat3& m) : q(m) {
  const double ortho = (q.transpose() * q - Mat3::Identity()).norm();
  if (ortho > 1e-12 || std::abs(q.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("rotation matrix is not in SO(3)");
}

FamilyParameter::FamilyParameter(ProjectivePoint4 p, double a5_, Rotation3 r)
    : proj(p), a5(a5_), rot(r) {
  if (!(a5 >= 0.0 && a5 <= 1.0)) throw std::invalid_argument("a5 must lie in [0,1]");
}

Eigen::Matrix3i GroupElement::matrix() const {
  Eigen::Matrix3i m;
  switch (tag) {
    case Id:   m << 1, 0, 0, 0, 1, 0, 0, 0, 1; break;
    case G1:   m << 0, 1, 0, 1, 0, 0, 0, 0, -1; break;
    case G2:   m << 0, -1, 0, -1, 0, 0, 0, 0, -1; break;
    case G1G2: m << -1, 0, 0, 0, -1, 0, 0, 0, 1; break;
  }
  return m;
}

Vec5 GroupElement::act_coeffs(const Vec5& a) const {
  switch (tag) {
    case Id:   return a;
    case G1:   return Vec5{-a[0], a[2], a[1], -a[3], a[4]};
    case G2:   return Vec5{-a[0], -a[2], -a[1], -a[3], a[4]};
    case G1G2: return Vec5{a[0], -a[1], -a[2], a[3], a[4]};
  }
  return a;
}

GroupElement operator*(GroupElement g, GroupElement h) {
  // Klein four-group: xor on the two generator bits.
  return GroupElement{static_cast<GroupElement::Tag>(g.tag ^ h.tag)};
}

double eval(const FamilyParameter& p, const Vec3& x) {
  return poly_eval<double>(p.proj.a, p.a5, p.rot.q * x);
}

Vec3 gradient(const FamilyParameter& p, const Vec3& x) {
  const Vec3 u = p.rot.q * x;
  return p.rot.q.transpose() * poly_gradient<double>(p.proj.a, p.a5, u);
}

Mat3 hessian(const FamilyParameter& p, const Vec3& x) {
  const Vec3 u = p.rot.q * x;
  return p.rot.q.transpose() * poly_hessian<double>(p.proj.a, p.a5, u) * p.rot.q;
}

FamilyParameter d2_act(GroupElement g, const FamilyParameter& p) {
  FamilyParameter out;
  out.proj = ProjectivePoint4(g.act_coeffs(p.proj.a));
  out.a5 = p.a5;
  out.rot = Rotation3(Mat3(g.matrixd() * p.rot.q));
  return out;
}

namespace {

// Lexicographic order on (coefficients, row-major rotation entries).
bool pair_less(const FamilyParameter& x, const FamilyParameter& y) {
  for (int i = 0; i < 5; ++i) {
    if (x.proj.a[i] != y.proj.a[i]) return x.proj.a[i] < y.proj.a[i];
  }
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (x.rot.q(r, c) != y.rot.q(r, c)) return x.rot.q(r, c) < y.rot.q(r, c);
    }
  return false;
}

}  // namespace

FamilyParameter canonical_pair(const FamilyParameter& p) {
  FamilyParameter best = d2_act(kD2[0], p);
  for (int i = 1; i < 4; ++i) {
    FamilyParameter cand = d2_act(kD2[i], p);
    if (pair_less(cand, best)) best = cand;
  }
  return best;
}

bool verify_equivariance(const FamilyParameter& p, int n_points,
                         std::uint64_t seed, int z_exp) {
  if (n_points < 1) throw std::invalid_argument("n_points must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const Vec5& a = p.proj.a;
  for (const GroupElement& g : {kD2[1], kD2[2], kD2[3]}) {
    const Vec5 ga = ProjectivePoint4::canonicalize(g.act_coeffs(a));
    const Mat3 gm = g.matrixd();  // involution, so g^{-1} = g
    double sign = 0.0;
    for (int i = 0; i < n_points; ++i) {
      const Vec3 x{unif(rng), unif(rng), unif(rng)};
      const double lhs = poly_eval<double>(ga, p.a5, x, z_exp);
      const double rhs = poly_eval<double>(a, p.a5, Vec3(gm * x), z_exp);
      if (sign == 0.0 && std::abs(rhs) > 1e-8) sign = lhs / rhs < 0 ? -1.0 : 1.0;
      if (sign != 0.0 && std::abs(lhs - sign * rhs) > 1e-10) return false;
    }
  }
  return true;
}

SingularSet singular_set(const FamilyParameter& p) {
  SingularSet out;
  const Vec5& a = p.proj.a;

  if (a[0] == 0.0) return out;  // plane or empty set: smooth

  // In rotated coordinates u the critical equations fix u0, u1 and require
  // u2 to be a multiple root of the shifted height profile.
  const double u0 = -a[1] / (2.0 * a[0]);
  const double u1 = a[2] / (2.0 * a[0]);
  const double c3 = a[3] / a[0];
  const double c4 = a[4] / a[0] - u0 * u0 + u1 * u1;

  if (p.a5 == 0.0 && c3 == 0.0) {
    if (c4 == 0.0) out.line = true;  // crossing planes: singular along the axis
    return out;
  }

  const CubicProfile prof = classify_cubic(c3, c4, p.a5);
  for (const CubicRoot& r : prof.roots) {
    if (r.multiplicity < 2) continue;
    const Vec3 u{u0, u1, r.z};
    if (u.norm() <= 1.0 + 1e-12) out.points.push_back(p.rot.q.transpose() * u);
  }
  return out;
}

std::vector<Vec3> singular_points(const FamilyParameter& p) {
  SingularSet s = singular_set(p);
  if (s.line) throw SingularLineError();
  return s.points;
}

std::string param_hash(const FamilyParameter& p) {
  const FamilyParameter c = canonical_pair(p);
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (int i = 0; i < 5; ++i) mix(c.proj.a[i]);
  mix(c.a5);
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col) mix(c.rot.q(r, col));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sweepout
