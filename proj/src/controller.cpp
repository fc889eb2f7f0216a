#include "ppact/controller.hpp"

#include <algorithm>
#include <cmath>

namespace ppact {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : v < 0.0 ? -1.0 : 0.0; }

}  // namespace

void ControllerConfig::validate() const {
  if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0))
    throw std::domain_error("controller: gains k1, k2, k3 must be positive");
  if (kappa2 < 0.0 || kappa31 < 0.0 || kappa32 < 0.0 || kappa33 < 0.0 || kappa34 < 0.0)
    throw std::domain_error("controller: kappa gains must be non-negative");
  if (zeta0 < 0.0) throw std::domain_error("controller: zeta0 must be non-negative");
  if (!(r_min > 0.0) || !(r_max >= r_min))
    throw std::domain_error("controller: need 0 < r_min <= r_max");
  if (rho_p_bar < 0.0 || rho_s_bar < 0.0)
    throw std::domain_error("controller: parasitic bounds must be non-negative");
  if (!(eps_q > 0.0)) throw std::domain_error("controller: eps_q must be positive");
  if (beta0 != 0.0 && (beta0 < beta_lower() || beta0 > beta_upper()))
    throw std::domain_error("controller: beta0 must lie in [beta_lower, beta_upper]");
}

VelocityCommand desired_velocity(double x1, double x2, const ReferencePoint& ref,
                                 const ControllerConfig& c) {
  VelocityCommand v;
  v.z1 = x1 - ref.y;
  v.x2d = ref.dy - c.k1 * v.z1;
  // d/dt (dy - k1 z1) with dz1 = x2 - dy, all analytic.
  v.dx2d = ref.d2y - c.k1 * (x2 - ref.dy);
  return v;
}

ChargeCommand desired_charge_squared(const State& s, const VelocityCommand& v,
                                     const ControllerConfig& c) {
  ChargeCommand ch;
  ch.z2 = s.x2 - v.x2d;
  ch.x3d = 3.0 * (2.0 * c.zeta0 * s.x2 + s.x1 + v.dx2d -
                  c.kappa2 * c.zeta0 * std::abs(s.x2) * ch.z2 - c.k2 * ch.z2);
  return ch;
}

ControlOutput control_voltage(const State& s, const ReferencePoint& ref,
                              const ControllerConfig& c) {
  const VelocityCommand v = desired_velocity(s.x1, s.x2, ref, c);
  const ChargeCommand ch = desired_charge_squared(s, v, c);

  ControlOutput o;
  o.z1 = v.z1;
  o.z2 = ch.z2;
  o.x2d = v.x2d;
  o.dx2d = v.dx2d;
  o.x3d = ch.x3d;
  o.z3 = s.x3 - ch.x3d;

  const double ax2 = std::abs(s.x2);
  o.a = -2.0 * c.zeta0 * s.x2 - s.x1 + s.x3 / 3.0;
  o.b1 = 2.0 * c.zeta0 - c.k1 - c.k2 - c.kappa2 * c.zeta0 * (sgn(s.x2) * o.z2 + ax2);
  o.b2 = ref.d3y + c.k1 * ref.d2y + (c.kappa2 * c.zeta0 * ax2 + c.k2) * v.dx2d + s.x2;

  const double b0 = c.beta_nominal();
  const double damping = c.kappa31 * c.zeta0 * std::abs(o.b1 * s.x2) * o.z3 +
                         c.kappa32 * std::abs(o.a * o.b1 + o.b2) * o.z3 +
                         c.kappa33 * c.r_max * c.rho_p_bar * ax2 * s.x3 * o.z3 +
                         c.kappa34 * c.rho_s_bar * s.x3 * o.z3;
  const double drive = 3.0 * (o.a * o.b1 + o.b2) - c.k3 * o.z3 - damping;
  const double q = std::max(std::sqrt(std::max(s.x3, 0.0)), c.eps_q);
  o.u = (3.0 / (4.0 * q)) * (2.0 * s.x3 * (1.0 - s.x1) + drive / b0);
  return o;
}

ErrorBounds error_bound_diagnostics(const ControlOutput& out, const State& s,
                                    const ControllerConfig& c,
                                    const NormalizedParams& truth) {
  const double b = beta(s.x1, truth);
  const double b0 = c.beta_nominal();
  const double dzeta = truth.zeta - c.zeta0;
  const double rho_s = truth.serial_ratio(s.x1);
  const double ax2 = std::abs(s.x2);
  const double crowd = 1.0 + truth.rho_p * (1.0 + rho_s);

  ErrorBounds mu;
  mu.mu2 = (2.0 * std::abs(dzeta * s.x2) + std::abs(out.z3) / 3.0) /
           (c.k2 / 2.0 + c.kappa2 * c.zeta0 * ax2);

  const double w31 = std::abs(out.b1 * s.x2);
  mu.mu31 = 6.0 * std::abs(dzeta) * w31 /
            (c.k3 / 8.0 + (b / b0) * c.kappa31 * c.zeta0 * w31);

  const double w32 = std::abs(out.a * out.b1 + out.b2);
  mu.mu32 = 3.0 * (std::abs(b - b0) / b0) * w32 /
            (c.k3 / 8.0 + (b / b0) * c.kappa32 * w32);

  const double w33 = ax2 * s.x3;
  mu.mu33 = (2.0 * truth.rho_p / crowd) * w33 /
            (c.k3 / 8.0 + (b / b0) * c.kappa33 * c.r_max * c.rho_p_bar * w33);

  mu.mu34 = (2.0 * rho_s / (truth.r * crowd)) * s.x3 /
            (c.k3 / 8.0 + (b * c.rho_s_bar / b0) * c.kappa34 * s.x3);
  return mu;
}

}  // namespace ppact
