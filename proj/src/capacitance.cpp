#include "ppact/capacitance.hpp"

#include <cmath>
#include <limits>

namespace ppact {

namespace {

void check_gap(const DeviceGeometry& g, double gap) {
  if (!(gap > 0.0) || gap > g.gap0)
    throw std::domain_error("gap must lie in (0, gap0]");
}

// One edge-pair fringing factor: 1 + g/(pi d) (1 + ln(2 pi d / g)).
double palmer_edge(double gap, double dim) {
  const double a = gap / (M_PI * dim);
  return 1.0 + a * (1.0 + std::log(2.0 * M_PI * dim / gap));
}

}  // namespace

void DeviceGeometry::validate() const {
  if (!(width > 0.0)) throw std::domain_error("geometry: width must be positive");
  if (!(length > 0.0)) throw std::domain_error("geometry: length must be positive");
  if (!(gap0 > 0.0)) throw std::domain_error("geometry: gap0 must be positive");
  if (!(permittivity > 0.0)) throw std::domain_error("geometry: permittivity must be positive");
}

double ideal_capacitance(const DeviceGeometry& g, double gap) {
  g.validate();
  check_gap(g, gap);
  return g.permittivity * g.width * g.length / gap;
}

double palmer_capacitance(const DeviceGeometry& g, double gap) {
  return ideal_capacitance(g, gap) * palmer_edge(gap, g.width) * palmer_edge(gap, g.length);
}

CapacitanceFn ideal_model(const DeviceGeometry& g) {
  return [g](double gap) { return ideal_capacitance(g, gap); };
}

CapacitanceFn palmer_model(const DeviceGeometry& g) {
  return [g](double gap) { return palmer_capacitance(g, gap); };
}

double substitute_capacitance(const DeviceGeometry& g, double gap, double c_ref) {
  g.validate();
  check_gap(g, gap);
  if (!(c_ref > 0.0)) throw std::domain_error("c_ref must be positive");
  return c_ref * g.gap0 / gap;
}

std::optional<double> serial_capacitance(const DeviceGeometry& g, double gap,
                                         const CapacitanceFn& real_model, double c_ref) {
  const double c_sub = substitute_capacitance(g, gap, c_ref);
  if (gap == g.gap0) return std::nullopt;
  const double c_real = real_model(gap);
  if (!(c_real > 0.0)) throw std::domain_error("real_model must return a positive capacitance");
  const double diff = c_sub - c_real;
  if (diff <= 0.0)
    throw ModelInconsistencyError("substitute capacitance does not exceed the model value");
  // 1/C_ser = 1/C_real - 1/C_sub
  return c_real * c_sub / diff;
}

double serial_ratio_at_gap(const DeviceGeometry& g, double gap,
                           const CapacitanceFn& real_model, double c_ref) {
  if (gap >= g.gap0 || gap <= 0.0) return 0.0;
  const auto c_ser = serial_capacitance(g, gap, real_model, c_ref);
  return c_ref / *c_ser;
}

double rho_s_bound(double c0, double c_ser_min) {
  if (!(c0 > 0.0)) throw std::domain_error("c0 must be positive");
  if (!(c_ser_min > 0.0)) throw std::domain_error("c_ser_min must be positive");
  if (std::isinf(c_ser_min)) return 0.0;
  return c0 / c_ser_min;
}

CapacitanceDecomposition decompose(const DeviceGeometry& g, double gap,
                                   const CapacitanceFn& real_model, double c_ref) {
  return {gap, real_model(gap), substitute_capacitance(g, gap, c_ref),
          serial_capacitance(g, gap, real_model, c_ref)};
}

SerialSweep sweep_serial(const DeviceGeometry& g, const CapacitanceFn& real_model,
                         double c_ref, double gap_min, double gap_max, int points) {
  g.validate();
  if (points < 2) throw std::domain_error("sweep needs at least 2 points");
  if (!(gap_min > 0.0) || !(gap_max > gap_min) || gap_max > g.gap0)
    throw std::domain_error("sweep gaps must satisfy 0 < gap_min < gap_max <= gap0");

  SerialSweep sweep;
  sweep.points.reserve(points);
  sweep.c_ser_min = std::numeric_limits<double>::infinity();
  const double ratio = std::log(gap_min / gap_max) / (points - 1);
  for (int i = 0; i < points; ++i) {
    // Endpoints hit exactly so the first row lands on gap_max.
    const double gap = i == 0 ? gap_max
                     : i == points - 1 ? gap_min
                                       : gap_max * std::exp(ratio * i);
    auto d = decompose(g, gap, real_model, c_ref);
    if (d.serial && *d.serial < sweep.c_ser_min) {
      sweep.c_ser_min = *d.serial;
      sweep.gap_at_min = gap;
    }
    sweep.points.push_back(std::move(d));
  }
  sweep.rho_s_bar = rho_s_bound(c_ref, sweep.c_ser_min);
  return sweep;
}

}  // namespace ppact
