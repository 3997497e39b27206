#pragma once

// CSV + JSON sidecar output for sweep results.

#include <filesystem>
#include <ostream>
#include <string>

#include "satd/experiments.hpp"

namespace satd {

/// Shortest decimal that round-trips; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

/// Header: axis names, output names, flag[, runtime_s]. LF line endings.
void write_csv(const SweepResult& r, std::ostream& out);

/// sweep_id, axes, output names, row count, flagged rows and the metadata.
nlohmann::json sidecar_json(const SweepResult& r);

/// Writes <dir>/<sweep_id>.csv and <dir>/<sweep_id>.json; returns the CSV path.
std::filesystem::path write_sweep(const SweepResult& r, const std::filesystem::path& dir,
                                  const nlohmann::json& config_snapshot = nullptr);

}  // namespace satd
