#pragma once

#include <string>
#include <utility>
#include <vector>

#include "roughflow/config.hpp"

namespace roughflow {

inline constexpr const char* kVersionStamp = "roughflow 0.1.0";

// 12 significant digits, shortest decimal form.
std::string format_real(double v);

struct ExperimentOutput {
  std::string csv;           // full CSV text, header row included
  std::string summary_json;  // serialized summary (config echo, fits, checks)
};

// Runs one experiment described by a flat config.  Recognized kinds
// (key "experiment"): qdelta3d, rdelta1d, dispersion, maximal_scan,
// cone_verify, field_check.  Deterministic for a fixed config and seed.
ExperimentOutput run_experiment(const Config& cfg);

// run_experiment plus writing <output>.csv and <output>.json; returns the two
// paths.  "output" must be present in the config.
std::vector<std::string> run_experiment_to_files(const Config& cfg);

// First two numeric columns of a CSV with a header row.
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

}  // namespace roughflow
