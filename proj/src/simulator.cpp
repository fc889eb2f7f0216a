#include "ppact/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppact {

namespace {

// x3-form derivative without the domain guard; RK4 stages may poke slightly
// outside the state space, so the charge factor is floored at zero.
StateDeriv deriv_x3(const State& s, double u, const NormalizedParams& p) {
  const double x3 = std::max(s.x3, 0.0);
  const double rho_s = p.serial_ratio(s.x1);
  const double b = beta(s.x1, p);
  return {s.x2,
          -2.0 * p.zeta * s.x2 - s.x1 + x3 / 3.0,
          b * ((4.0 / 3.0) * std::sqrt(x3) * u - 2.0 * (1.0 - s.x1) * x3 -
               2.0 * rho_s * x3 + 2.0 * p.r * p.rho_p * s.x2 * x3)};
}

struct QState {
  double x1, x2, q;
};

QState step_rk4_charge(const QState& s, double u, const NormalizedParams& p, double dt) {
  auto add = [](const QState& y, double h, const ChargeDeriv& d) {
    return QState{y.x1 + h * d.dx1, y.x2 + h * d.dx2, y.q + h * d.dq};
  };
  const ChargeDeriv k1 = rhs_charge_form(s.x1, s.x2, s.q, u, p);
  const QState s2 = add(s, dt / 2.0, k1);
  const ChargeDeriv k2 = rhs_charge_form(s2.x1, s2.x2, s2.q, u, p);
  const QState s3 = add(s, dt / 2.0, k2);
  const ChargeDeriv k3 = rhs_charge_form(s3.x1, s3.x2, s3.q, u, p);
  const QState s4 = add(s, dt, k3);
  const ChargeDeriv k4 = rhs_charge_form(s4.x1, s4.x2, s4.q, u, p);
  return {s.x1 + dt / 6.0 * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1),
          s.x2 + dt / 6.0 * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2),
          s.q + dt / 6.0 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq)};
}

// Charge-only step with the plate pinned against the stop.
double step_rk4_pinned(double q, double u, const NormalizedParams& p, double dt,
                       IntegrationForm form) {
  if (form == IntegrationForm::charge) {
    auto g = [&](double w) { return rhs_charge_form(1.0, 0.0, w, u, p).dq; };
    const double k1 = g(q);
    const double k2 = g(q + dt / 2.0 * k1);
    const double k3 = g(q + dt / 2.0 * k2);
    const double k4 = g(q + dt * k3);
    return q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  auto g = [&](double w) {
    return deriv_x3({1.0, 0.0, w}, u, p).dx3;
  };
  const double x3 = q * q;
  const double k1 = g(x3);
  const double k2 = g(x3 + dt / 2.0 * k1);
  const double k3 = g(x3 + dt / 2.0 * k2);
  const double k4 = g(x3 + dt * k3);
  return std::sqrt(std::max(x3 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0));
}

bool finite(double a, double b, double c) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

// Shared closed/open loop driver; voltage() is evaluated once per step and
// held. The record() callback sees the pre-step state.
template <typename Voltage, typename Record>
SimTrace run_loop(const NormalizedParams& truth, const TrajectoryConfig* traj,
                  double t_end, double dt, State initial, IntegrationForm form,
                  Voltage voltage, Record record) {
  const long n = std::lround(t_end / dt);
  if (n < 1) throw std::domain_error("simulation: t_end must cover at least one step");

  SimTrace tr;
  tr.samples.reserve(static_cast<size_t>(n) + 1);
  State s = initial;
  double q = std::sqrt(std::max(s.x3, 0.0));
  bool contact = s.x1 >= 1.0;
  bool stop_at_contact = false;

  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double u = voltage(t, s, tr);
    record(t, s, tr);
    if (stop_at_contact) {
      tr.status = RunStatus::contact;
      return tr;
    }
    if (i == n) break;

    if (contact) {
      q = step_rk4_pinned(q, u, truth, dt, form);
      if (!std::isfinite(q)) {
        tr.status = RunStatus::numerical_failure;
        return tr;
      }
      s.x3 = q * q;
      continue;
    }

    if (form == IntegrationForm::charge) {
      const QState next = step_rk4_charge({s.x1, s.x2, q}, u, truth, dt);
      if (!finite(next.x1, next.x2, next.q)) {
        tr.status = RunStatus::numerical_failure;
        return tr;
      }
      q = next.q;
      s = {std::clamp(next.x1, 0.0, 1.0), next.x2, q * q};
    } else {
      const State next = step_rk4(s, u, truth, dt);
      if (!finite(next.x1, next.x2, next.x3)) {
        tr.status = RunStatus::numerical_failure;
        return tr;
      }
      s = next;
      q = std::sqrt(s.x3);
    }

    if (s.x1 >= 1.0) {
      s.x1 = 1.0;
      s.x2 = 0.0;
      contact = true;
      // A transfer aimed below full travel has failed once the plate hits
      // the stop; record the contact state and stop there.
      if (traj && traj->y_target < 1.0) stop_at_contact = true;
    }
  }

  tr.status = contact ? RunStatus::contact : RunStatus::completed;
  return tr;
}

}  // namespace

void Scenario::validate() const {
  truth.validate();
  controller.validate();
  trajectory.validate();
  if (!(dt > 0.0)) throw std::domain_error("simulation: dt must be positive");
  if (!(t_end >= dt)) throw std::domain_error("simulation: t_end must cover at least one step");
  if (!initial.in_state_space())
    throw std::domain_error("simulation: initial state outside x1 in [0,1], x3 >= 0");
}

State step_rk4(const State& s, double u, const NormalizedParams& p, double dt) {
  auto add = [](const State& y, double h, const StateDeriv& d) {
    return State{y.x1 + h * d.dx1, y.x2 + h * d.dx2, y.x3 + h * d.dx3};
  };
  const StateDeriv k1 = deriv_x3(s, u, p);
  const StateDeriv k2 = deriv_x3(add(s, dt / 2.0, k1), u, p);
  const StateDeriv k3 = deriv_x3(add(s, dt / 2.0, k2), u, p);
  const StateDeriv k4 = deriv_x3(add(s, dt, k3), u, p);
  State next{s.x1 + dt / 6.0 * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1),
             s.x2 + dt / 6.0 * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2),
             s.x3 + dt / 6.0 * (k1.dx3 + 2.0 * k2.dx3 + 2.0 * k3.dx3 + k4.dx3)};
  next.x1 = std::clamp(next.x1, 0.0, 1.0);
  next.x3 = std::max(next.x3, 0.0);
  return next;
}

SimTrace run_closed_loop(const Scenario& sc) {
  sc.validate();
  ControlOutput out{};
  ErrorBounds mu{};
  auto voltage = [&](double t, const State& s, const SimTrace&) {
    out = control_voltage(s, eval_reference(t, sc.trajectory), sc.controller);
    mu = error_bound_diagnostics(out, s, sc.controller, sc.truth);
    return out.u;
  };
  auto record = [&](double t, const State& s, SimTrace& tr) {
    tr.samples.push_back({t, s.x1, s.x2, s.x3, out.u, out.z1, out.z2, out.z3,
                          mu.mu2, mu.mu3(), beta(s.x1, sc.truth)});
  };
  return run_loop(sc.truth, &sc.trajectory, sc.t_end, sc.dt, sc.initial, sc.form,
                  voltage, record);
}

SimTrace run_open_loop(double u0, const NormalizedParams& p, double t_end, double dt,
                       State initial, IntegrationForm form) {
  p.validate();
  if (!(dt > 0.0)) throw std::domain_error("simulation: dt must be positive");
  if (!initial.in_state_space())
    throw std::domain_error("simulation: initial state outside x1 in [0,1], x3 >= 0");
  auto voltage = [&](double, const State&, const SimTrace&) { return u0; };
  auto record = [&](double t, const State& s, SimTrace& tr) {
    tr.samples.push_back({t, s.x1, s.x2, s.x3, u0, 0.0, 0.0, 0.0, 0.0, 0.0,
                          beta(s.x1, p)});
  };
  return run_loop(p, nullptr, t_end, dt, initial, form, voltage, record);
}

SettleMetrics settle_metrics(const SimTrace& trace, const TrajectoryConfig& traj) {
  traj.validate();
  if (trace.samples.size() < 2)
    throw std::invalid_argument("settle metrics: trace too short");
  const double t_last = trace.samples.back().t;
  if (!(t_last > traj.t_end))
    throw std::invalid_argument("settle metrics: trace ends before the hold phase");

  const double t_tail = t_last - 0.1 * (t_last - traj.t_end);
  double acc = 0.0;
  long cnt = 0;
  double over = 0.0;
  for (const auto& s : trace.samples) {
    over = std::max(over, s.x1 - traj.y_target);
    if (s.t >= t_tail) {
      acc += std::abs(s.z1);
      ++cnt;
    }
  }

  // Last excursion of |z1| past the band decides the settling instant.
  constexpr double kBand = 0.01;
  double settle;
  if (std::abs(trace.samples.back().z1) >= kBand) {
    settle = std::numeric_limits<double>::infinity();
  } else {
    settle = traj.t_end;
    for (size_t i = trace.samples.size(); i-- > 0;) {
      const auto& s = trace.samples[i];
      if (s.t < traj.t_end) break;
      if (std::abs(s.z1) >= kBand) {
        settle = std::max(traj.t_end, trace.samples[i + 1].t);
        break;
      }
    }
  }
  return {acc / static_cast<double>(cnt), over, settle};
}

double iss_envelope_excess(const SimTrace& trace, double k1, double rate_scale) {
  if (trace.samples.empty()) throw std::invalid_argument("envelope: empty trace");
  if (!(k1 > 0.0)) throw std::domain_error("envelope: k1 must be positive");
  const double z10 = std::abs(trace.samples.front().z1);
  const double t0 = trace.samples.front().t;
  double sup_z2 = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : trace.samples) {
    sup_z2 = std::max(sup_z2, std::abs(s.z2));
    const double env = z10 * std::exp(-rate_scale * k1 * (s.t - t0)) + sup_z2 / k1;
    worst = std::max(worst, std::abs(s.z1) - env);
  }
  return worst;
}

}  // namespace ppact
