#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ppact/simulator.hpp"

namespace ppact {

// Malformed or invalid configuration text; line is 1-based, 0 when the
// problem is not tied to a single line.
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& msg);
};

// Unreadable or unwritable file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How the true serial parasitic ratio enters the plant: a constant, or
// re-derived from the fringing model at the instantaneous gap.
enum class SerialModel { constant, palmer_gap };

// Full description of one run, read from an INI-style file with sections
// [geometry], [physical], [parasitics], [controller], [trajectory],
// [simulation]. Missing keys take the defaults below; unknown sections,
// unknown keys, duplicates and malformed numbers are rejected with the
// offending line.
struct RunConfig {
  DeviceGeometry geometry;

  double mass = 1e-9;                        // kg
  double damping = 6.324555320336759e-05;    // N s/m
  double stiffness = 1.0;                    // N/m
  double resistance = 6051845282.42951;      // ohm

  double rho_p = 0.0;
  double rho_s = 0.0;
  SerialModel serial_model = SerialModel::constant;

  ControllerConfig controller;
  TrajectoryConfig trajectory;

  double zeta = 1.0;  // true damping ratio
  double r = 1.0;     // true time-scale ratio
  double dt = 1e-3;
  double t_final = 20.0;
  IntegrationForm form = IntegrationForm::charge;
  State initial;

  static RunConfig parse(std::string_view text);
  static RunConfig parse_file(const std::string& path);

  // Canonical text form; parse(serialize()) reproduces every field exactly.
  std::string serialize() const;

  PhysicalParams physical() const;
  NormalizedParams truth() const;
  Scenario scenario(double setpoint) const;
};

}  // namespace ppact
