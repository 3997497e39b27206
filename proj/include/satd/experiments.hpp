#pragma once

// Parameter sweeps behind the figures. Every sweep is a dense grid; rows that
// fail a precondition are kept and flagged.

#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "satd/gates.hpp"
#include "json.hpp"

namespace satd {

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct SweepRecord {
  std::vector<double> params;   ///< one value per axis, axis order
  std::vector<double> outputs;  ///< NaN where the row failed
  std::string flag;             ///< empty, or the failure class
  double runtime_s = 0.0;
};

struct SweepResult {
  std::string sweep_id;
  std::vector<SweepAxis> axes;
  std::vector<std::string> output_names;
  std::vector<SweepRecord> records;  ///< row-major, last axis fastest
  nlohmann::json metadata;
  bool record_runtime = false;

  /// Index of an output column; throws ContractError if absent.
  [[nodiscard]] std::size_t output_index(const std::string& name) const;
  [[nodiscard]] double value(std::size_t row, const std::string& name) const;
};

/// Shared knobs of the sweep drivers.
struct SweepSettings {
  double omega0 = 2.0 * std::numbers::pi * 3.0;  ///< rad/us
  double x = 2.0;                                ///< tau * omega0
  double tol = 1e-8;                             ///< propagator tolerance
  double lindblad_tol = 1e-9;
  int state_grid = 1001;
  int time_grid = 4001;
  unsigned jobs = 1;
  bool record_runtime = false;
  ControlOptions controls{};
};

/// Runs fn(i) for i in [0, n) on `jobs` threads; results are stored by index so
/// the output does not depend on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Grid helpers.
std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

SweepResult sweep_amplitude_ratio(const std::vector<double>& eta_grid, const std::vector<double>& x_grid,
                                  const SweepSettings& s);

SweepResult sweep_gz_diagnostics(const std::vector<double>& eta_grid, const std::vector<double>& x_values,
                                 const SweepSettings& s);

/// E_DS with and without g_z, Omega + g_z and P on a time grid (S gate, settings' x).
SweepResult gz_energy_series(double eta, const SweepSettings& s, int n = 801);

SweepResult sweep_systematic_errors(const GateSpec& g, const std::vector<double>& delta_grid,
                                    const std::vector<double>& eps_grid, const std::vector<double>& eta_values,
                                    const SweepSettings& s);

/// State-averaged fidelity vs kappa2 with the given base noise; a linear fit
/// is stored in the metadata.
SweepResult sweep_lindblad(const GateSpec& g, const std::vector<double>& kappa2_grid, const NoiseParams& base,
                           double eta, const SweepSettings& s);

SweepResult sweep_hyperfine(const GateSpec& g, const std::vector<double>& a_hf_grid, const NoiseParams& noise,
                            double eta, const SweepSettings& s);

/// (delta, eps) fidelity map of a controlled gate at fixed A_hf.
SweepResult sweep_two_qubit_errors(const GateSpec& g, double a_hf, const std::vector<double>& delta_grid,
                                   const std::vector<double>& eps_grid, double eta, const SweepSettings& s);

SweepResult sweep_phase_smoothing(const GateSpec& g, const std::vector<double>& sigma_grid,
                                  const std::vector<double>& eta_values, const SweepSettings& s);

/// Original and corrected pulses on a uniform grid; metadata carries the
/// open-trajectory flag (Omega_R_tilde(0) > 0).
SweepResult emit_pulse_comparison(const DriveParams& p, const ControlOptions& opts, int n = 801);

}  // namespace satd
