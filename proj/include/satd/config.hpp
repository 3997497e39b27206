#pragma once

// Run configuration: a JSON document overridden by command-line flags.
// Frequencies are linear MHz here and angular rad/us everywhere else.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "satd/experiments.hpp"

namespace satd {

struct RunConfig {
  // drive
  std::string gate = "s";         ///< s, not, cs, cnot, custom
  std::string axis = "z";         ///< custom gates: z or x
  std::optional<double> gamma_g;  ///< rad; default pi/2
  std::optional<double> phi2;     ///< rad; overrides gamma_g = pi - phi2
  double omega0_mhz = 3.0;
  double eta = 1.0;
  double x = 2.0;
  double sigma_ns = 0.0;
  // noise
  double delta = 0.0;
  double eps = 0.0;
  double kappa1 = 0.0;  ///< 1/us
  double kappa2 = 0.0;  ///< 1/us
  // two-qubit
  double ahf_mhz = 130.0;
  // controls
  bool use_gz = true;
  std::string mode = "satd";  ///< satd, bare, tqd
  // numerics
  double tol = 1e-8;
  double lindblad_tol = 1e-9;
  int state_grid = 1001;
  int time_grid = 4001;
  int samples = 801;  ///< pulse time-series length
  // sweeps
  std::vector<double> eta_values{0.5, 1.0, 2.0, 4.0};
  int grid_eta = 60;
  int grid_x = 60;
  int error_points = 31;
  std::string sigma_ns_range = "0:20:1";
  // output
  std::string out = "out";
  unsigned jobs = 1;
  bool record_runtime = false;

  /// Keys mirror the nested layout of to_json(); unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
  [[nodiscard]] nlohmann::json to_json() const;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  [[nodiscard]] GateSpec gate_spec() const;
  [[nodiscard]] DriveParams drive() const;
  [[nodiscard]] NoiseParams noise() const;
  [[nodiscard]] DriveMode drive_mode() const;
  [[nodiscard]] double omega0() const;  ///< rad/us
  [[nodiscard]] double a_hf() const;    ///< rad/us
  [[nodiscard]] SweepSettings settings() const;
};

/// "a:b:step" (inclusive) or "v1,v2,...".
std::vector<double> parse_range(const std::string& spec, const std::string& key);

/// "NxM" grid override.
std::pair<int, int> parse_grid(const std::string& spec, const std::string& key);

}  // namespace satd
