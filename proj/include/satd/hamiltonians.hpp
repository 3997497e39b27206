#pragma once

// Time-dependent Hamiltonians (hbar = 1, rad/us).

#include "satd/controls.hpp"
#include "satd/numkit.hpp"
#include "satd/pulses.hpp"

namespace satd {

/// Static pulse errors and Lindblad rates.
struct NoiseParams {
  double delta_err = 0.0;  ///< qubit-frequency shift, units of omega0
  double eps_err = 0.0;    ///< fractional Rabi deviation
  double kappa1 = 0.0;     ///< decay rate, 1/us
  double kappa2 = 0.0;     ///< dephasing rate, 1/us

  /// Throws InputError on negative rates or non-finite values.
  void validate() const;
};

struct TwoQubitParams {
  DriveParams drive;
  double a_hf;  ///< hyperfine coupling, rad/us

  TwoQubitParams(DriveParams drive, double a_hf);
};

/// Which pulses drive the qubit.
enum class DriveMode { Bare, Satd, Tqd };

/// 1/2 [[D, W e^{-i phi}], [W e^{i phi}, -D]]
ComplexMatrix drive_matrix(double delta, double omega_r, double phi);

ComplexMatrix h0(const DriveParams& p, double t);

ComplexMatrix h_satd(const DriveParams& p, double t, const ControlOptions& opts = {});

/// Systematic errors on top of the SATD pulses: delta_err*omega0 added to the
/// detuning, Rabi amplitude scaled by (1 + eps_err).
ComplexMatrix h_se(const DriveParams& p, const NoiseParams& n, double t, const ControlOptions& opts = {});

/// Transitionless driving comparison: H0 + the counterdiabatic term
/// 1/2 (theta_dot e_phi - phi_dot sin(theta) e_theta).sigma.
ComplexMatrix h_tqd(const DriveParams& p, double t);

/// Single-qubit Hamiltonian for a given mode with systematic errors applied.
ComplexMatrix h_single(const DriveParams& p, DriveMode mode, const NoiseParams& n, double t,
                       const ControlOptions& opts = {});

/// blockdiag(h1, h2) in the basis {0dn, 1dn, 0up, 1up}; h2 has +A_hf on the
/// last diagonal entry. Errors are applied to both blocks.
ComplexMatrix h_tq(const TwoQubitParams& q, double t, DriveMode mode = DriveMode::Satd,
                   const NoiseParams& n = {}, const ControlOptions& opts = {});

/// Columns are the adiabatic eigenstates psi_+(t), psi_-(t).
ComplexMatrix adiabatic_frame(const DriveParams& p, double t);

}  // namespace satd
