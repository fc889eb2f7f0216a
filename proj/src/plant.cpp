#include "ppact/plant.hpp"

#include <cmath>

namespace ppact {

void PhysicalParams::validate() const {
  if (!(mass > 0.0)) throw std::domain_error("physical: mass must be positive");
  if (damping < 0.0) throw std::domain_error("physical: damping must be non-negative");
  if (!(stiffness > 0.0)) throw std::domain_error("physical: stiffness must be positive");
  if (!(resistance > 0.0)) throw std::domain_error("physical: resistance must be positive");
  geometry.validate();
  if (c_parallel < 0.0) throw std::domain_error("physical: c_parallel must be non-negative");
  if (c_serial && !(*c_serial > 0.0))
    throw std::domain_error("physical: c_serial must be positive when present");
}

void NormalizedParams::validate() const {
  if (zeta < 0.0) throw std::domain_error("plant: zeta must be non-negative");
  if (!(r > 0.0)) throw std::domain_error("plant: r must be positive");
  if (rho_p < 0.0) throw std::domain_error("plant: rho_p must be non-negative");
  if (rho_s < 0.0) throw std::domain_error("plant: rho_s must be non-negative");
}

NormalizedParams NormalizedParams::from_ratios(double zeta, double r, double rho_p,
                                               double rho_s) {
  NormalizedParams p;
  p.zeta = zeta;
  p.r = r;
  p.rho_p = rho_p;
  p.rho_s = rho_s;
  p.validate();
  return p;
}

NormalizedParams normalize(const PhysicalParams& phys) {
  phys.validate();
  NormalizedParams p;
  p.omega0 = std::sqrt(phys.stiffness / phys.mass);
  p.c0 = phys.geometry.permittivity * phys.geometry.width * phys.geometry.length /
         phys.geometry.gap0;
  p.v_pullin = std::sqrt(8.0 * phys.stiffness * phys.geometry.gap0 * phys.geometry.gap0 /
                         (27.0 * p.c0));
  p.q_pullin = (2.0 / 3.0) * p.c0 * p.v_pullin;
  p.zeta = phys.damping / (2.0 * phys.mass * p.omega0);
  p.r = p.omega0 * p.c0 * phys.resistance;
  p.rho_p = phys.c_parallel / p.c0;
  p.rho_s = phys.c_serial ? p.c0 / *phys.c_serial : 0.0;
  return p;
}

double beta(double x1, const NormalizedParams& p) {
  return 1.0 / (p.r * (1.0 + p.rho_p * (1.0 - x1) + p.rho_p * p.serial_ratio(x1)));
}

StateDeriv rhs_x3_form(const State& s, double u, const NormalizedParams& p) {
  if (!s.in_state_space()) throw std::domain_error("state outside x1 in [0,1], x3 >= 0");
  const double rho_s = p.serial_ratio(s.x1);
  const double b = beta(s.x1, p);
  return {s.x2,
          -2.0 * p.zeta * s.x2 - s.x1 + s.x3 / 3.0,
          b * ((4.0 / 3.0) * std::sqrt(s.x3) * u - 2.0 * (1.0 - s.x1) * s.x3 -
               2.0 * rho_s * s.x3 + 2.0 * p.r * p.rho_p * s.x2 * s.x3)};
}

ChargeDeriv rhs_charge_form(double x1, double x2, double q, double u,
                            const NormalizedParams& p) {
  const double rho_s = p.serial_ratio(x1);
  const double b = beta(x1, p);
  return {x2,
          -2.0 * p.zeta * x2 - x1 + q * q / 3.0,
          b * ((2.0 / 3.0) * u - (1.0 - x1) * q - rho_s * q + p.r * p.rho_p * x2 * q)};
}

double holding_voltage(double x1, double rho_s) {
  return 1.5 * std::sqrt(3.0 * x1) * (1.0 + rho_s - x1);
}

PullIn static_pullin(double rho_s) {
  if (rho_s < 0.0) throw std::domain_error("rho_s must be non-negative");
  const double x_pi = (1.0 + rho_s) / 3.0;
  return {x_pi, holding_voltage(x_pi, rho_s)};
}

DriveDiagnostics actuation_diagnostics(const State& s, const NormalizedParams& p,
                                       double u) {
  if (!s.in_state_space()) throw std::domain_error("state outside x1 in [0,1], x3 >= 0");
  const double q = std::sqrt(s.x3);
  const double rho_s = p.serial_ratio(s.x1);
  return {q, (1.0 - s.x1) * q,
          (u - 1.5 * q * (1.0 - s.x1 + rho_s)) / p.r,
          beta(s.x1, p)};
}

}  // namespace ppact
