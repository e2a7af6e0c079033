#include "sweepout/omega.hpp"

#include <cmath>

namespace sweepout {

namespace {
double sphere_height(double x, double y) {
  return std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
}
}  // namespace

OmegaDomain::OmegaDomain(double b1, double b2, double t, double eps1,
                         double eps2, double grad_bound_const)
    : b1_(b1), b2_(b2), t_(t), R_(20.0 * std::sqrt(t)), eps1_(eps1),
      eps2_(eps2), cpp_(grad_bound_const) {
  if (!(t > 0.0 && t < eps2))
    throw std::invalid_argument("omega: need t in (0, eps2)");
  if (std::abs(b1) >= eps1 || std::abs(b2) >= eps1)
    throw std::invalid_argument("omega: need (b1,b2) in (-eps1,eps1)^2");
  if (!(2.0 * R_ < kS3Radius))
    throw std::invalid_argument("omega: need 2R < 1/4");

  // Cap height: max of the sphere height over the radius-2R disk about the
  // axis, plus a small margin so the cap clears the sphere strictly.
  const double bd = std::hypot(b1_, b2_);
  const double dmin = std::max(bd - 2.0 * R_, 0.0);
  c_ = std::sqrt(1.0 - dmin * dmin) + 1e-3 * t_;

  check_invariants();
}

double OmegaDomain::blend(double rho) const {
  if (rho <= R_) return 1.0;
  if (rho >= 2.0 * R_) return 0.0;
  const double u = (rho - R_) / R_;
  const double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  return 1.0 - s;
}

double OmegaDomain::blend_deriv(double rho) const {
  if (rho <= R_ || rho >= 2.0 * R_) return 0.0;
  const double u = (rho - R_) / R_;
  return -30.0 * u * u * (1.0 - u) * (1.0 - u) / R_;
}

double OmegaDomain::height(double x, double y) const {
  const double phi = blend(rho(x, y));
  return (1.0 - phi) * sphere_height(x, y) + phi * c_;
}

Vec2 OmegaDomain::height_grad(double x, double y) const {
  const double r = rho(x, y);
  const double phi = blend(r);
  const double dphi = blend_deriv(r);
  const double f = sphere_height(x, y);
  Vec2 grad_f = f > 1e-12 ? Vec2{-x / f, -y / f} : Vec2{0.0, 0.0};
  Vec2 rho_hat = r > 1e-12 ? Vec2{(x - b1_) / r, (y - b2_) / r} : Vec2{0.0, 0.0};
  return (1.0 - phi) * grad_f + dphi * (c_ - f) * rho_hat;
}

double OmegaDomain::profile_g(double rho_val) const {
  const double bd = std::hypot(b1_, b2_);
  const Vec2 u = bd > 1e-12 ? Vec2{-b1_ / bd, -b2_ / bd} : Vec2{1.0, 0.0};
  const double x = b1_ + rho_val * u.x(), y = b2_ + rho_val * u.y();
  if (rho_val <= 2.0 * R_) return height(x, y);
  return sphere_height(x, y);
}

double OmegaDomain::profile_g_deriv(double rho_val) const {
  const double h = 1e-7;
  return (profile_g(rho_val + h) - profile_g(std::max(rho_val - h, 0.0))) /
         (rho_val < h ? (rho_val + h) : 2.0 * h);
}

bool OmegaDomain::inside(const Vec3& p) const {
  if (rho(p.x(), p.y()) <= 2.0 * R_)
    return std::abs(p.z()) <= height(p.x(), p.y());
  return p.squaredNorm() <= 1.0;
}

double OmegaDomain::boundary_value(const Vec3& p) const {
  if (rho(p.x(), p.y()) <= 2.0 * R_)
    return std::abs(p.z()) - height(p.x(), p.y());
  return p.squaredNorm() - 1.0;
}

Vec3 OmegaDomain::outward_normal(const Vec3& p) const {
  if (rho(p.x(), p.y()) <= 2.0 * R_ && std::abs(p.z()) > 0.5) {
    const Vec2 g = height_grad(p.x(), p.y());
    Vec3 w{-g.x(), -g.y(), 1.0};
    if (p.z() < 0.0) w = {g.x(), g.y(), -1.0};
    return w.normalized();
  }
  return p.normalized();
}

void OmegaDomain::check_invariants() const {
  // Dense radial/angular sampling of the bump region.
  const int nr = 100, na = 100;
  const double grad_bound = cpp_ * (2.0 * eps1_ + 40.0 * std::sqrt(eps2_));
  for (int i = 0; i <= nr; ++i) {
    const double r = 2.0 * R_ * i / nr;
    for (int j = 0; j < na; ++j) {
      const double th = 2.0 * M_PI * j / na;
      const double x = b1_ + r * std::cos(th), y = b2_ + r * std::sin(th);
      const double G = height(x, y);
      const double f = sphere_height(x, y);
      if (G < f - 1e-12)
        throw InvariantViolation("omega: bump fails to contain the sphere");
      if (r <= R_ && std::abs(G - c_) > 1e-12)
        throw InvariantViolation("omega: cap is not horizontal inside S1");
      if (height_grad(x, y).norm() > grad_bound)
        throw InvariantViolation("omega: |grad g| exceeds the configured bound");
    }
  }
  // Matches the sphere on the rim.
  for (int j = 0; j < na; ++j) {
    const double th = 2.0 * M_PI * j / na;
    const double x = b1_ + 2.0 * R_ * std::cos(th);
    const double y = b2_ + 2.0 * R_ * std::sin(th);
    if (std::abs(height(x, y) - sphere_height(x, y)) > 1e-12)
      throw InvariantViolation("omega: bump does not close onto the sphere");
  }
}

}  // namespace sweepout
