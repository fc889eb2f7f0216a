#include "ppact/trajectory.hpp"

namespace ppact {

ReferencePoint eval_reference(double t, const TrajectoryConfig& cfg) {
  cfg.validate();
  if (t <= cfg.t_start) return {cfg.y_start, 0.0, 0.0, 0.0};
  if (t >= cfg.t_end) return {cfg.y_target, 0.0, 0.0, 0.0};

  const double T = cfg.t_end - cfg.t_start;
  const double tau = (t - cfg.t_start) / T;
  const double s = 1.0 - tau;

  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t2 * t2;
  const double t5 = t4 * tau;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s2 * s2;

  const double p = t5 * (126.0 + tau * (-420.0 + tau * (540.0 + tau * (-315.0 + tau * 70.0))));
  const double dp = 630.0 * t4 * s4;
  const double d2p = 2520.0 * t3 * s3 * (1.0 - 2.0 * tau);
  const double omt = 1.0 - 2.0 * tau;
  const double d3p = 2520.0 * t2 * s2 * (3.0 * omt * omt - 2.0 * tau * s);

  const double dy = cfg.y_target - cfg.y_start;
  return {cfg.y_start + dy * p,
          dy * dp / T,
          dy * d2p / (T * T),
          dy * d3p / (T * T * T)};
}

}  // namespace ppact
