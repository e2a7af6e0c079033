#include "sweepout/phi5.hpp"

#include <cmath>
#include <stdexcept>

namespace sweepout {

Phi5Parameter::Phi5Parameter(double b1_, double b2_, double b3_, double b4_,
                             double b5_, double s_, double t_)
    : b1(b1_), b2(b2_), b3(b3_), b4(b4_), b5(b5_), s(s_), t(t_) {
  const double n2 = b3 * b3 + b4 * b4 + b5 * b5;
  if (std::abs(n2 - 1.0) > 1e-12)
    throw std::invalid_argument("phi5 direction must be a unit vector");
  if (b5 < 0.0) throw std::invalid_argument("b5 must be >= 0");
  if (!(t > 0.0) || s < 0.0 || s > t)
    throw std::invalid_argument("need 0 <= s <= t, t > 0");
}

double Phi5Parameter::eval(const Vec3& x) const {
  const double dx = x.x() - b1, dy = x.y() - b2;
  return dx * dx - dy * dy + m(x.z());
}

Vec3 Phi5Parameter::grad(const Vec3& x) const {
  return {2.0 * (x.x() - b1), -2.0 * (x.y() - b2), dm(x.z())};
}

double Phi5Parameter::ds_partial_at(const Vec3& x) const {
  const double z = x.z();
  return b3 * z + b4 + b5 * z * z * z;
}

Phi5Parameter Phi5Parameter::with_s(double new_s) const {
  Phi5Parameter out = *this;
  if (new_s < 0.0 || new_s > t) throw std::invalid_argument("s out of [0,t]");
  out.s = new_s;
  return out;
}

double ds_partial(const Phi5Parameter& p, const Vec3& x) {
  return p.ds_partial_at(x);
}

FamilyParameter to_family(const Phi5Parameter& p) {
  Vec5 a;
  a << 1.0, -2.0 * p.b1, 2.0 * p.b2, p.s * p.b3,
      p.b1 * p.b1 - p.b2 * p.b2 + p.s * p.b4;
  return FamilyParameter(ProjectivePoint4(a), p.s * p.b5, Rotation3());
}

}  // namespace sweepout
