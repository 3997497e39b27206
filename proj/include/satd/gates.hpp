#pragma once

// Target gates, realized gates and fidelity metrics.

#include <functional>
#include <string>

#include "satd/dynamics.hpp"
#include "satd/hamiltonians.hpp"
#include "satd/numkit.hpp"
#include "satd/pulses.hpp"

namespace satd {

enum class GateKind { Uz, Ux, ControlledUz, ControlledUx };

class GateSpec {
 public:
  GateSpec(GateKind kind, double gamma_g);

  /// "s", "not", "cs", "cnot" (all with gamma_g = pi/2).
  static GateSpec named(const std::string& name);

  [[nodiscard]] GateKind kind() const { return kind_; }
  [[nodiscard]] double gamma_g() const { return gamma_g_; }
  [[nodiscard]] double chi() const;
  [[nodiscard]] bool controlled() const;
  [[nodiscard]] PathKind path() const;
  /// phi2 = pi - gamma_g with phi1 = 0.
  [[nodiscard]] double phi2() const;

 private:
  GateKind kind_;
  double gamma_g_;
};

std::string to_string(GateKind kind);

ComplexMatrix ideal_gate(const GateSpec& g);

/// blockdiag(U_sq, I) in the basis {0dn, 1dn, 0up, 1up}.
ComplexMatrix ideal_two_qubit(const GateSpec& g);

/// (|Tr M|^2 + Tr(M M^+)) / (d(d+1)), M = u0^+ ur. Both arguments must be unitary.
double avg_gate_fidelity(const ComplexMatrix& u0, const ComplexMatrix& ur);

/// Mean over theta in [0, 2pi] (trapezoid, grid_size odd >= 3) of
/// <psi_ideal(theta)| rho(theta) |psi_ideal(theta)>, psi0 = cos th|0> + sin th|1>.
double state_avg_fidelity(const GateSpec& g, const std::function<DensityMatrix(double)>& rho_of_theta,
                          int grid_size = 1001);

/// Drive realizing the gate: phi1 = 0, phi2 = pi - gamma_g, path from the gate family.
DriveParams drive_for_gate(const GateSpec& g, double omega0, double eta, double x, double sigma = 0.0);

/// Numerically propagated single-qubit gate.
PropagatorResult realized_gate(const DriveParams& p, DriveMode mode, const NoiseParams& n, double tol,
                               const ControlOptions& opts = {});

/// Two-qubit propagator with the static hyperfine phase of the |1 up> level
/// removed: diag(1, 1, 1, e^{i A_hf T}) U.
PropagatorResult realized_two_qubit(const TwoQubitParams& q, DriveMode mode, const NoiseParams& n, double tol,
                                    const ControlOptions& opts = {});

/// Lindblad channel of the whole gate.
QuantumChannel realized_channel(const DriveParams& p, DriveMode mode, const NoiseParams& n, double tol,
                                const ControlOptions& opts = {});

/// state_avg_fidelity of a channel against the ideal gate.
double channel_fidelity(const GateSpec& g, const QuantumChannel& ch, int grid_size = 1001);

}  // namespace satd
