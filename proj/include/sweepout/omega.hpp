#pragma once

// The enlarged domain: the unit ball with a polar bump inside the solid
// cylinder of radius 2R about the axis {x=b1, y=b2}, R = 20*sqrt(t). The
// boundary is horizontal inside the radius-R cylinder and matches the sphere
// outside radius 2R; a C^2 radial blend joins the two. The construction is
// mirrored across z = 0.

#include <stdexcept>

#include "sweepout/types.hpp"

namespace sweepout {

struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

class OmegaDomain {
 public:
  // Preconditions: t in (0, eps2), |b1|,|b2| < eps1, 2R < 1/4.
  OmegaDomain(double b1, double b2, double t, double eps1, double eps2,
              double grad_bound_const = 10.0);

  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double t() const { return t_; }
  double R() const { return R_; }
  double cap_height() const { return c_; }
  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }

  // Radial blend weight: 1 on [0,R], 0 on [2R,inf), quintic in between.
  double blend(double rho) const;
  double blend_deriv(double rho) const;

  double rho(double x, double y) const {
    const double dx = x - b1_, dy = y - b2_;
    return std::sqrt(dx * dx + dy * dy);
  }

  // Height of the north boundary sheet over (x,y), valid for rho <= 2R
  // (equals the sphere height f there when rho = 2R).
  double height(double x, double y) const;
  Vec2 height_grad(double x, double y) const;

  // Radial section of the height through the steepest-f direction; the
  // reported profile g(rho) on [0,1].
  double profile_g(double rho) const;
  double profile_g_deriv(double rho) const;

  bool inside(const Vec3& p) const;

  // Outward unit normal of the boundary at (a point near) the boundary.
  Vec3 outward_normal(const Vec3& p) const;

  // Signed boundary function: negative inside, zero on the boundary.
  double boundary_value(const Vec3& p) const;

  static constexpr double kS3Radius = 0.25;

 private:
  void check_invariants() const;

  double b1_, b2_, t_, R_, eps1_, eps2_, c_, cpp_;
};

inline OmegaDomain build_omega(double b1, double b2, double t, double eps1,
                               double eps2) {
  return OmegaDomain(b1, b2, t, eps1, eps2);
}

}  // namespace sweepout
