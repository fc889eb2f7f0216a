#pragma once

#include <functional>
#include <optional>

#include "ppact/capacitance.hpp"

namespace ppact {

// Lumped electromechanical model: spring-suspended plate driven through a
// source resistance, with optional parasitic capacitors in parallel and in
// series with the variable gap capacitor.
struct PhysicalParams {
  double mass = 1e-9;                  // kg
  double damping = 0.0;                // N s/m
  double stiffness = 1.0;              // N/m
  double resistance = 1.0;             // ohm, source loop
  DeviceGeometry geometry;
  double c_parallel = 0.0;             // F, across the gap capacitor
  std::optional<double> c_serial;      // F, nullopt = none

  void validate() const;
};

// Dimensionless plant. Deflection is scaled by the rest gap, time by the
// mechanical period, charge by the pull-in charge; the remaining knobs are
// the damping ratio zeta, the RC/mechanical time-scale ratio r, and the
// parasitic ratios rho_p = C_p/C0 and rho_s = C0/C_s.
struct NormalizedParams {
  double zeta = 1.0;
  double r = 1.0;
  double rho_p = 0.0;
  double rho_s = 0.0;

  // When set, overrides the constant rho_s with a deflection-dependent
  // ratio (series remainder evaluated at the instantaneous gap).
  std::function<double(double)> rho_s_of_x1;

  // Scale factors retained for readouts back to physical units.
  double omega0 = 1.0;     // rad/s
  double c0 = 1.0;         // F, ideal rest-gap capacitance
  double v_pullin = 1.0;   // V
  double q_pullin = 1.0;   // C

  double serial_ratio(double x1) const {
    return rho_s_of_x1 ? rho_s_of_x1(x1) : rho_s;
  }

  static NormalizedParams from_ratios(double zeta, double r, double rho_p, double rho_s);
  void validate() const;
};

NormalizedParams normalize(const PhysicalParams& p);

// x1 = deflection in [0, 1], x2 = velocity, x3 = q^2 >= 0.
struct State {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  bool in_state_space() const {
    return x1 >= 0.0 && x1 <= 1.0 && x3 >= 0.0;
  }
};

// Charge-equation gain 1/(r (1 + rho_p (1 - x1) + rho_p rho_s)). Bounded
// between 1/(r (1 + rho_p (1 + rho_s))) and 1/r over the full travel.
double beta(double x1, const NormalizedParams& p);

struct StateDeriv {
  double dx1, dx2, dx3;
};

// Open form in x3 = q^2. Throws std::domain_error outside the state space.
// Note the x3 = 0 manifold is invariant in this coordinate: an uncharged
// start never acquires charge. Integrators that must start from rest should
// use the charge form below.
StateDeriv rhs_x3_form(const State& s, double u, const NormalizedParams& p);

struct ChargeDeriv {
  double dx1, dx2, dq;
};

// Same dynamics in the signed charge q (x3 = q^2); regular at q = 0.
ChargeDeriv rhs_charge_form(double x1, double x2, double q, double u,
                            const NormalizedParams& p);

// Source voltage that holds deflection x1 at rest: (3/2) sqrt(3 x1) (1 + rho_s - x1).
double holding_voltage(double x1, double rho_s);

struct PullIn {
  double x1;  // travel fraction where the holding curve peaks
  double u;   // normalized voltage at the peak
};

// Static pull-in point. A series parasitic pushes it beyond the ideal third
// of the gap: x_pi = (1 + rho_s)/3, u_pi = (1 + rho_s)^(3/2).
PullIn static_pullin(double rho_s);

struct DriveDiagnostics {
  double q;            // normalized charge, sqrt(x3)
  double v_actuation;  // normalized plate voltage (1 - x1) q
  double i;            // normalized loop current
  double beta;         // charge-equation gain at this deflection
};

// Electrical readouts along a trajectory; u is the applied source voltage.
DriveDiagnostics actuation_diagnostics(const State& s, const NormalizedParams& p,
                                       double u = 0.0);

}  // namespace ppact
