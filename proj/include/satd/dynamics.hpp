#pragma once

// Time evolution: unitary propagation, the analytic dressed-state operator,
// dynamical/geometric phase bookkeeping and Lindblad dynamics.

#include <array>
#include <functional>
#include <vector>

#include "satd/controls.hpp"
#include "satd/hamiltonians.hpp"
#include "satd/numkit.hpp"

namespace satd {

using HamiltonianFn = std::function<ComplexMatrix(double)>;

struct PropagatorResult {
  ComplexMatrix u_final;
  long step_count;  ///< steps of the accepted (finest) pass
  double est_error;
};

/// Time-ordered exponential of -i H on [t0, t1] by midpoint-exponential steps.
/// Each interval between consecutive breakpoints is refined by step halving
/// until successive passes differ by less than tol / (number of intervals).
/// Throws ConvergenceError after max_halvings halvings.
PropagatorResult propagate_unitary(const HamiltonianFn& h, double t0, double t1, double tol,
                                   const std::vector<double>& breakpoints = {}, int max_halvings = 20);

/// One fixed-step midpoint-exponential pass with n steps.
ComplexMatrix midpoint_propagate(const HamiltonianFn& h, double t0, double t1, long n);

struct PhaseDecomposition {
  double gamma_g;
  double gamma_d;
  double gamma_t;
  /// Half-integrals of E_DS over the phi1 (outer) and phi2 (middle) segments.
  double i_phi1;
  double i_phi2;
  /// Half-integrals per quarter.
  std::array<double, 4> quarter_phase;
  /// (1 + cos chi)/2
  double segment_weight;
};

/// gamma_g = pi - (phi2 - phi1); gamma_d = i_phi2 - i_phi1 (the outer segments
/// are traversed with the state on the other dressed level).
PhaseDecomposition phase_decomposition(const DriveParams& p, const ControlOptions& opts = {},
                                       double abs_tol = 1e-10);

/// [[cos g + i cos(chi) sin g, i e^{-i phi1} sin(chi) sin g],
///  [i e^{i phi1} sin(chi) sin g, cos g - i cos(chi) sin g]]
ComplexMatrix geometric_gate_matrix(double chi, double phi1, double gamma);

/// Closed-form propagator at T from chi, phi1 and gamma_t. Hard phase jumps only.
ComplexMatrix ds_evolution_operator(const DriveParams& p, const ControlOptions& opts = {});

/// rho' = -i[H, rho] + k1 M(b-) + k2 M(bz), M(b) = 2 b rho b^+ - {b^+ b, rho}.
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const ComplexMatrix& rho, double kappa1, double kappa2);

/// RK4 with step halving to tol (max-entry difference between passes).
/// Throws ConvergenceError on non-convergence or trace drift above 1e-6.
DensityMatrix propagate_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0, const NoiseParams& n,
                                 double t0, double t1, double tol, const std::vector<double>& breakpoints = {});

/// Linear map on 2x2 operators, stored as the images of the matrix units.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::array<ComplexMatrix, 4> images) : images_(images) {}
  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& rho) const;
  [[nodiscard]] const ComplexMatrix& image(std::size_t r, std::size_t c) const { return images_[2 * r + c]; }

 private:
  std::array<ComplexMatrix, 4> images_;
};

/// The Lindblad evolution over [t0, t1] as a channel.
QuantumChannel lindblad_channel(const HamiltonianFn& h, const NoiseParams& n, double t0, double t1, double tol,
                                const std::vector<double>& breakpoints = {});

}  // namespace satd
