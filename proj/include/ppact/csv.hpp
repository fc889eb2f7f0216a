#pragma once

#include <ostream>
#include <string>

#include "ppact/capacitance.hpp"
#include "ppact/simulator.hpp"

namespace ppact {

// Shortest representation with 9 significant digits; non-finite values come
// out as inf/-inf/nan tokens.
std::string format_sig9(double v);

// Columns t,x1,x2,x3,u,z1,z2,z3,mu2,mu3,beta; one row per sample, then a
// trailing "# status=" comment line.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

// Columns gap_m,C_ideal_F,C_palmer_F,C_sub_F,C_ser_F. An unbounded serial
// remainder is written as the literal token inf.
void write_sweep_csv(std::ostream& os, const DeviceGeometry& g, const SerialSweep& sweep);

}  // namespace ppact
