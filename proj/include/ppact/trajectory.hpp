#pragma once

#include <stdexcept>

namespace ppact {

// Smooth set-point transfer: 9th-order minimum-jerk style polynomial blend
// from y_start to y_target over [t_start, t_end], constant outside.
struct TrajectoryConfig {
  double t_start = 0.0;
  double t_end = 10.0;
  double y_start = 0.0;
  double y_target = 0.5;

  void validate() const {
    if (!(t_end > t_start)) throw std::domain_error("trajectory: t_end must exceed t_start");
    if (y_start < 0.0 || y_start > 1.0 || y_target < 0.0 || y_target > 1.0)
      throw std::domain_error("trajectory: endpoints must lie in [0, 1]");
  }
};

struct ReferencePoint {
  double y;    // position
  double dy;   // velocity
  double d2y;  // acceleration
  double d3y;  // jerk
};

// Reference and its first three derivatives at time t. The blend has zero
// velocity, acceleration, jerk and snap at both ends, so the clamped
// extension is C^4 at the seams.
ReferencePoint eval_reference(double t, const TrajectoryConfig& cfg);

}  // namespace ppact
