#pragma once

// The saddle family: zero sets of
//   p(x,y,z) = a0*(x^2 - y^2 + a5*z^3) + a1*x + a2*y + a3*z + a4
// composed with a rotation, together with the order-4 dihedral symmetry
// that acts on both the coefficients and the rotation.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sweepout/types.hpp"

namespace sweepout {

// ---------------------------------------------------------------------------
// Raw polynomial evaluation (no projective normalization).
// The z_exp knob exists for negative-control tests: the cubic term is the
// symmetry-compatible choice, an even power breaks it.

template <typename Scalar>
Scalar poly_eval(const Eigen::Matrix<Scalar, 5, 1>& a, Scalar a5,
                 const Eigen::Matrix<Scalar, 3, 1>& u, int z_exp = 3) {
  const Scalar zc = z_exp == 3 ? u.z() * u.z() * u.z() : u.z() * u.z();
  return a[0] * (u.x() * u.x() - u.y() * u.y() + a5 * zc) + a[1] * u.x() +
         a[2] * u.y() + a[3] * u.z() + a[4];
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> poly_gradient(const Eigen::Matrix<Scalar, 5, 1>& a,
                                          Scalar a5,
                                          const Eigen::Matrix<Scalar, 3, 1>& u) {
  return {Scalar(2) * a[0] * u.x() + a[1], Scalar(-2) * a[0] * u.y() + a[2],
          Scalar(3) * a[0] * a5 * u.z() * u.z() + a[3]};
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> poly_hessian(const Eigen::Matrix<Scalar, 5, 1>& a,
                                         Scalar a5,
                                         const Eigen::Matrix<Scalar, 3, 1>& u) {
  Eigen::Matrix<Scalar, 3, 3> h = Eigen::Matrix<Scalar, 3, 3>::Zero();
  h(0, 0) = Scalar(2) * a[0];
  h(1, 1) = Scalar(-2) * a[0];
  h(2, 2) = Scalar(6) * a[0] * a5 * u.z();
  return h;
}

// ---------------------------------------------------------------------------
// Domain types

// Point of RP^4 stored as the canonical representative: unit norm, first
// nonzero coordinate positive.
struct ProjectivePoint4 {
  Vec5 a;

  ProjectivePoint4() : a(Vec5::Zero()) { a[0] = 1.0; }
  explicit ProjectivePoint4(const Vec5& raw) : a(canonicalize(raw)) {}

  static Vec5 canonicalize(Vec5 v);

  friend bool operator==(const ProjectivePoint4& x, const ProjectivePoint4& y) {
    return x.a == y.a;
  }
};

struct Rotation3 {
  Mat3 q;

  Rotation3() : q(Mat3::Identity()) {}
  explicit Rotation3(const Mat3& m);
  explicit Rotation3(const Quat& quat) : Rotation3(quat.normalized().toRotationMatrix()) {}
};

struct FamilyParameter {
  ProjectivePoint4 proj;
  double a5 = 0.0;
  Rotation3 rot;

  FamilyParameter() = default;
  FamilyParameter(ProjectivePoint4 p, double a5_, Rotation3 r = Rotation3());
};

// D2 = {id, g1, g2, g1g2}; g1, g2 are the 180-degree rotations about
// {z=0, x=y} and {z=0, x=-y}.
struct GroupElement {
  enum Tag { Id = 0, G1 = 1, G2 = 2, G1G2 = 3 };
  Tag tag = Id;

  Eigen::Matrix3i matrix() const;
  Mat3 matrixd() const { return matrix().cast<double>(); }
  Vec5 act_coeffs(const Vec5& a) const;  // raw coefficient action, no canonicalization

  friend GroupElement operator*(GroupElement g, GroupElement h);
  friend bool operator==(GroupElement g, GroupElement h) { return g.tag == h.tag; }
};

inline const std::array<GroupElement, 4> kD2 = {
    GroupElement{GroupElement::Id}, GroupElement{GroupElement::G1},
    GroupElement{GroupElement::G2}, GroupElement{GroupElement::G1G2}};

// ---------------------------------------------------------------------------
// Operations

double eval(const FamilyParameter& p, const Vec3& x);
Vec3 gradient(const FamilyParameter& p, const Vec3& x);
Mat3 hessian(const FamilyParameter& p, const Vec3& x);

FamilyParameter d2_act(GroupElement g, const FamilyParameter& p);

// Canonical representative of the D2 orbit of (proj, rot): lexicographically
// smallest (a, row-major rot) among the four images.
FamilyParameter canonical_pair(const FamilyParameter& p);

// Samples n random points; checks that the polynomial of g.proj at x matches
// the polynomial of proj at g^{-1}x up to one global sign per g, for all
// g in D2. z_exp = 2 is the symmetry-breaking negative control.
bool verify_equivariance(const FamilyParameter& p, int n_points,
                         std::uint64_t seed = 12345, int z_exp = 3);

// ---------------------------------------------------------------------------
// Singular set: solutions of p = 0, grad p = 0 in the closed unit ball.

struct SingularLineError : std::runtime_error {
  SingularLineError() : std::runtime_error("singular set is a line") {}
};

struct SingularSet {
  bool line = false;              // 1-dimensional singular locus (crossing planes)
  std::vector<Vec3> points;       // isolated singular points inside the closed ball
};

SingularSet singular_set(const FamilyParameter& p);

// Throws SingularLineError when the singular locus is 1-dimensional.
std::vector<Vec3> singular_points(const FamilyParameter& p);

// FNV-1a hash of the canonical parameter bytes; used for mesh file names.
std::string param_hash(const FamilyParameter& p);

}  // namespace sweepout
