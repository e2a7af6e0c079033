#pragma once

// Reparametrized chart around the crossing disks:
//   p_s(x,y,z) = (x-b1)^2 - (y-b2)^2 + s*(b3*z + b4 + b5*z^3),
// with unit direction (b3,b4,b5), b5 >= 0, and opening scale s in (0,t].

#include "sweepout/cubic.hpp"
#include "sweepout/family.hpp"
#include "sweepout/types.hpp"

namespace sweepout {

struct Phi5Parameter {
  double b1 = 0.0, b2 = 0.0;
  double b3 = 0.0, b4 = 0.0, b5 = 1.0;
  double s = 0.0;
  double t = 1.0;

  Phi5Parameter() = default;
  Phi5Parameter(double b1_, double b2_, double b3_, double b4_, double b5_,
                double s_, double t_);

  double eval(const Vec3& x) const;
  Vec3 grad(const Vec3& x) const;
  double ds_partial_at(const Vec3& x) const;  // b3*z + b4 + b5*z^3

  // Height profile m(z) = s*(b3*z + b4 + b5*z^3) and its z-derivative;
  // the cross-section at height z is (x-b1)^2 - (y-b2)^2 = -m(z).
  double m(double z) const { return s * (b3 * z + b4 + b5 * z * z * z); }
  double dm(double z) const { return s * (b3 + 3.0 * b5 * z * z); }

  CubicProfile profile() const { return classify_cubic(b3, b4, b5); }

  Phi5Parameter with_s(double new_s) const;
};

// ds_partial from the module surface: param carries the direction, x the point.
double ds_partial(const Phi5Parameter& p, const Vec3& x);

// Exact embedding into the projective family: a = [1 : -2b1 : 2b2 : s*b3 :
// b1^2 - b2^2 + s*b4] with a5 = s*b5, then canonicalized.
FamilyParameter to_family(const Phi5Parameter& p);

}  // namespace sweepout
