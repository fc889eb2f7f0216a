#pragma once

#include <vector>

#include "ppact/controller.hpp"
#include "ppact/plant.hpp"
#include "ppact/trajectory.hpp"

namespace ppact {

enum class RunStatus { completed, contact, numerical_failure };

// Which coordinates the integrator advances. The charge form is regular at
// zero charge and is the default; the x3 form matches the open dynamics
// exactly but cannot leave an uncharged state.
enum class IntegrationForm { charge, x3 };

struct Scenario {
  NormalizedParams truth;
  ControllerConfig controller;
  TrajectoryConfig trajectory;
  double t_end = 20.0;
  double dt = 1e-3;
  State initial;
  IntegrationForm form = IntegrationForm::charge;

  void validate() const;
};

struct TraceSample {
  double t;
  double x1, x2, x3;
  double u;
  double z1, z2, z3;
  double mu2, mu3;
  double beta;
};

struct SimTrace {
  std::vector<TraceSample> samples;
  RunStatus status = RunStatus::completed;
};

// One fixed-step RK4 step of the x3-form dynamics under zero-order-hold u,
// with the deflection clamped to [0, 1] and the squared charge floored at 0.
State step_rk4(const State& s, double u, const NormalizedParams& p, double dt);

// Closed-loop run: controller evaluated once per step, held over the step.
// Contact (x1 reaching 1) is absorbing for the plate; a run aimed below full
// travel stops there with status contact, a full-travel run keeps charging
// against the stop and completes.
SimTrace run_closed_loop(const Scenario& sc);

// Constant-voltage run of the bare plant, same stepping and contact rules.
// Error and margin columns are recorded as zero.
SimTrace run_open_loop(double u0, const NormalizedParams& p, double t_end, double dt,
                       State initial = {}, IntegrationForm form = IntegrationForm::charge);

struct SettleMetrics {
  double final_error;  // mean |z1| over the last tenth of the hold phase
  double overshoot;    // max(x1) - y_target, floored at 0
  double settle_time;  // first t past the transfer with |z1| < 0.01 thereafter
};

// Throws std::invalid_argument when the trace does not reach the hold phase.
SettleMetrics settle_metrics(const SimTrace& trace, const TrajectoryConfig& traj);

// Worst violation of the tracking-error envelope
//   |z1(t)| <= |z1(0)| exp(-rate_scale k1 t) + sup_{tau<=t} |z2(tau)| / k1
// over the trace; <= 0 everywhere the envelope holds. rate_scale 1 checks
// the rate implied by the error dynamics, 0.5 the conservative half rate.
double iss_envelope_excess(const SimTrace& trace, double k1, double rate_scale = 1.0);

}  // namespace ppact
