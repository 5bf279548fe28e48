#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"
#include "timestep.hpp"

namespace ps {

// Shortest round-trip decimal form ("%.17g"); used for every float written
// to CSV or JSON so repeated runs are byte-identical.
std::string fmt_g17(double v);

// Write via a temp file in the target directory + atomic rename; no partial
// files on failure.
void atomic_write_file(const std::string& path, const std::string& content);

// CSV: header "t,E_total,E_block1,E_block2", one row per recorded step.
std::string trace_to_csv(const EnergyTrace& trace);
void write_trace_csv(const EnergyTrace& trace, const std::string& path);

// CSV: header "s,value".
std::string scan_to_csv(const FrequencyScan& scan);
void write_scan_csv(const FrequencyScan& scan, const std::string& path);

// Parse a trace CSV produced by write_trace_csv (exact round trip).
EnergyTrace read_trace_csv(const std::string& path);

// JSON fit report: {"alpha":..., "constant":..., "window":[w1,w2], "r2":...}
// with r2 null when not applicable.  Numbers are serialized with fmt_g17.
std::string fit_report_json(const BoundFit& fit);

}  // namespace ps
