#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ppact {

inline constexpr double kVacuumPermittivity = 8.854e-12;  // F/m

// Rectangular parallel-plate electrode pair. The movable plate travels from
// the rest gap toward the fixed plate, so runtime gaps lie in (0, gap0].
struct DeviceGeometry {
  double width = 600e-6;                       // m
  double length = 300e-6;                      // m
  double gap0 = 305e-6;                        // m, rest gap
  double permittivity = kVacuumPermittivity;   // F/m

  void validate() const;
};

// eps*W*L/g, infinite-plate approximation.
double ideal_capacitance(const DeviceGeometry& g, double gap);

// Ideal capacitance corrected for fringing fields on both plate edges.
// Exceeds the ideal value for any finite plate, strongly so for gaps
// comparable to the plate dimensions.
double palmer_capacitance(const DeviceGeometry& g, double gap);

// Any total-capacitance-vs-gap model, in farads.
using CapacitanceFn = std::function<double(double)>;

CapacitanceFn ideal_model(const DeviceGeometry& g);
CapacitanceFn palmer_model(const DeviceGeometry& g);

// c_ref/(1 - x) where x = 1 - gap/gap0: the artificial capacitor whose
// charge-voltage behaviour at displacement x mimics an ideal plate with
// reference value c_ref at the rest gap.
double substitute_capacitance(const DeviceGeometry& g, double gap, double c_ref);

// A real (fringing) capacitance splits into the substitute capacitor in
// series with a gap-dependent remainder. Raised when that remainder would
// come out non-positive, i.e. the model undershoots the substitute.
struct ModelInconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Series remainder such that 1/C_real = 1/C_sub + 1/C_ser. Unbounded at the
// rest gap where the two curves touch; nullopt encodes that.
std::optional<double> serial_capacitance(const DeviceGeometry& g, double gap,
                                         const CapacitanceFn& real_model, double c_ref);

// C_ref/C_ser at the given gap, extended by its limits: 0 at gaps >= gap0
// and 0 as the gap closes. Safe to call for any gap, including g <= 0.
double serial_ratio_at_gap(const DeviceGeometry& g, double gap,
                           const CapacitanceFn& real_model, double c_ref);

// Worst-case serial-parasitic ratio c0/c_ser_min; 0 when the serial
// remainder is unbounded (no serial parasitic at all).
double rho_s_bound(double c0, double c_ser_min);

struct CapacitanceDecomposition {
  double gap;                    // m
  double total;                  // F, real_model(gap)
  double substitute;             // F
  std::optional<double> serial;  // F, nullopt = unbounded
};

CapacitanceDecomposition decompose(const DeviceGeometry& g, double gap,
                                   const CapacitanceFn& real_model, double c_ref);

struct SerialSweep {
  std::vector<CapacitanceDecomposition> points;  // descending gap from gap_max
  double c_ser_min = 0.0;                        // F
  double gap_at_min = 0.0;                       // m
  double rho_s_bar = 0.0;                        // c_ref / c_ser_min
};

// Geometric gap grid from gap_max down to gap_min. The serial remainder is
// unbounded at gap0, dips through a minimum, and grows again as the gap
// closes; its minimum sets the worst-case serial ratio rho_s_bar.
SerialSweep sweep_serial(const DeviceGeometry& g, const CapacitanceFn& real_model,
                         double c_ref, double gap_min, double gap_max, int points);

}  // namespace ppact
