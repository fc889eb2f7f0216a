#pragma once

#include "ppact/plant.hpp"
#include "ppact/trajectory.hpp"

namespace ppact {

// Backstepping voltage law for the normalized plant. Designed on nominal
// damping zeta0 and a worst-case charge-gain interval derived from bounds on
// the time-scale ratio and the parasitic ratios; the kappa gains scale
// nonlinear damping terms that keep the loop ISS against the mismatch
// between those bounds and the true plant.
struct ControllerConfig {
  double k1 = 10.0;
  double k2 = 10.0;
  double k3 = 10.0;
  double kappa2 = 1.0;
  double kappa31 = 1.0;
  double kappa32 = 1.0;
  double kappa33 = 1.0;
  double kappa34 = 1.0;

  double zeta0 = 1.0;      // nominal damping ratio
  double r_min = 1.0;      // bounds on the true time-scale ratio
  double r_max = 1.0;
  double rho_p_bar = 0.0;  // worst-case parallel ratio
  double rho_s_bar = 0.0;  // worst-case serial ratio
  double beta0 = 0.0;      // design gain; 0 selects beta_lower()
  double eps_q = 1e-6;     // charge floor in the voltage division

  double beta_lower() const { return 1.0 / (r_max * (1.0 + rho_p_bar * (1.0 + rho_s_bar))); }
  double beta_upper() const { return 1.0 / r_min; }
  double beta_nominal() const { return beta0 > 0.0 ? beta0 : beta_lower(); }

  void validate() const;
};

struct VelocityCommand {
  double z1;    // tracking error x1 - y_r
  double x2d;   // desired velocity
  double dx2d;  // its analytic time derivative
};

VelocityCommand desired_velocity(double x1, double x2, const ReferencePoint& ref,
                                 const ControllerConfig& c);

struct ChargeCommand {
  double z2;   // velocity error x2 - x2d
  double x3d;  // desired squared charge
};

ChargeCommand desired_charge_squared(const State& s, const VelocityCommand& v,
                                     const ControllerConfig& c);

struct ControlOutput {
  double u;     // source voltage command
  double z1, z2, z3;
  double x2d, dx2d, x3d;
  double a;     // nominal plate acceleration
  double b1;    // d x3d / d x2 composite gain
  double b2;    // feedforward remainder of d x3d / dt
};

ControlOutput control_voltage(const State& s, const ReferencePoint& ref,
                              const ControllerConfig& c);

// Ratios of attained perturbation terms to the nonlinear damping allocated
// against them. Values below 1 mean the corresponding robustness margin held
// at this state; they require the true plant parameters.
struct ErrorBounds {
  double mu2 = 0.0;
  double mu31 = 0.0;
  double mu32 = 0.0;
  double mu33 = 0.0;
  double mu34 = 0.0;

  double mu3() const { return mu31 + mu32 + mu33 + mu34; }
};

ErrorBounds error_bound_diagnostics(const ControlOutput& out, const State& s,
                                    const ControllerConfig& c,
                                    const NormalizedParams& truth);

}  // namespace ppact
