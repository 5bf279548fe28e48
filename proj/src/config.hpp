#pragma once

#include <string>

#include "interconnect.hpp"

namespace ps {

// A complete run description, parsed from strict JSON: unknown keys are
// rejected, every value is type- and range-checked.
struct RunConfig {
    ModelParams params;
    double dt = 0.0;       // 0: use the grid default h/4
    double t_final = 0.0;  // 0: use the model default (30 wave-heat, 120 acoustic)
    long snapshot_every = 0;
    std::string family = "default";
    std::string out_csv;  // optional output path; CLI flags may override
};

RunConfig parse_config(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

double resolved_dt(const RunConfig& cfg, const Model& mdl);
double resolved_t_final(const RunConfig& cfg);
long resolved_steps(const RunConfig& cfg, const Model& mdl);

}  // namespace ps
