#include "ppact/csv.hpp"

#include <cmath>
#include <cstdio>

namespace ppact {

std::string format_sig9(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::contact: return "contact";
    case RunStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

}  // namespace

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
  os << "t,x1,x2,x3,u,z1,z2,z3,mu2,mu3,beta\n";
  for (const auto& s : trace.samples) {
    os << format_sig9(s.t) << ',' << format_sig9(s.x1) << ',' << format_sig9(s.x2)
       << ',' << format_sig9(s.x3) << ',' << format_sig9(s.u) << ',' << format_sig9(s.z1)
       << ',' << format_sig9(s.z2) << ',' << format_sig9(s.z3) << ',' << format_sig9(s.mu2)
       << ',' << format_sig9(s.mu3) << ',' << format_sig9(s.beta) << '\n';
  }
  os << "# status=" << status_name(trace.status) << '\n';
}

void write_sweep_csv(std::ostream& os, const DeviceGeometry& g, const SerialSweep& sweep) {
  os << "gap_m,C_ideal_F,C_palmer_F,C_sub_F,C_ser_F\n";
  for (const auto& p : sweep.points) {
    os << format_sig9(p.gap) << ',' << format_sig9(ideal_capacitance(g, p.gap)) << ','
       << format_sig9(p.total) << ',' << format_sig9(p.substitute) << ','
       << (p.serial ? format_sig9(*p.serial) : "inf") << '\n';
  }
}

}  // namespace ppact
