#include "satd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "satd/errors.hpp"

namespace satd {
namespace {

constexpr int kMaxHalvings = 20;
constexpr long kInitialSteps = 16;

std::vector<double> intervals(double t0, double t1, const std::vector<double>& breakpoints) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) {
    throw InputError("invalid propagation interval [" + std::to_string(t0) + ", " + std::to_string(t1) + "]");
  }
  std::vector<double> pts{t0, t1};
  for (double b : breakpoints) {
    if (b > t0 && b < t1) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ComplexMatrix midpoint_pass(const HamiltonianFn& h, double a, double b, long n, std::size_t dim) {
  const double dt = (b - a) / static_cast<double>(n);
  ComplexMatrix u = ComplexMatrix::identity(dim);
  for (long i = 0; i < n; ++i) {
    u = expm_skew(h(a + (static_cast<double>(i) + 0.5) * dt), dt) * u;
  }
  return u;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  }
  return m;
}

using OperatorSet = std::vector<ComplexMatrix>;

OperatorSet rk4_pass(const HamiltonianFn& h, const NoiseParams& n, double a, double b, long steps,
                     OperatorSet rho) {
  const double dt = (b - a) / static_cast<double>(steps);
  // H may jump at a and b (the corrected pulses do at quarter boundaries);
  // sample the one-sided limits from inside the interval
  const double nudge = 1e-9 * (b - a);
  for (long i = 0; i < steps; ++i) {
    const double t = a + static_cast<double>(i) * dt;
    const ComplexMatrix h0 = h(i == 0 ? a + nudge : t);
    const ComplexMatrix hm = h(t + 0.5 * dt);
    const ComplexMatrix h1 = h(i + 1 == steps ? b - nudge : t + dt);
    for (auto& r : rho) {
      const ComplexMatrix k1 = lindblad_rhs(h0, r, n.kappa1, n.kappa2);
      const ComplexMatrix k2 = lindblad_rhs(hm, r + (0.5 * dt) * k1, n.kappa1, n.kappa2);
      const ComplexMatrix k3 = lindblad_rhs(hm, r + (0.5 * dt) * k2, n.kappa1, n.kappa2);
      const ComplexMatrix k4 = lindblad_rhs(h1, r + dt * k3, n.kappa1, n.kappa2);
      r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return rho;
}

OperatorSet evolve_lindblad(const HamiltonianFn& h, const NoiseParams& n, double t0, double t1, double tol,
                            const std::vector<double>& breakpoints, OperatorSet rho) {
  n.validate();
  if (!(tol > 0.0)) throw InputError("tolerance must be > 0");
  for (const auto& r : rho) {
    if (r.dim() != 2) throw ContractError("Lindblad evolution is defined for a single qubit");
  }
  const auto pts = intervals(t0, t1, breakpoints);
  const double sub_tol = tol / static_cast<double>(std::max<std::size_t>(pts.size() - 1, 1));
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    long steps = kInitialSteps;
    OperatorSet coarse = rk4_pass(h, n, pts[s], pts[s + 1], steps, rho);
    bool done = false;
    for (int k = 0; k < kMaxHalvings && !done; ++k) {
      steps *= 2;
      OperatorSet fine = rk4_pass(h, n, pts[s], pts[s + 1], steps, rho);
      double diff = 0.0;
      for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, max_abs_diff(fine[i], coarse[i]));
      coarse = std::move(fine);
      done = diff < sub_tol;
    }
    if (!done) {
      throw ConvergenceError("Lindblad integration did not converge on [" + std::to_string(pts[s]) + ", " +
                             std::to_string(pts[s + 1]) + "]");
    }
    rho = std::move(coarse);
  }
  return rho;
}

}  // namespace

PropagatorResult propagate_unitary(const HamiltonianFn& h, double t0, double t1, double tol,
                                   const std::vector<double>& breakpoints, int max_halvings) {
  if (!(tol > 0.0)) throw InputError("tolerance must be > 0");
  const auto pts = intervals(t0, t1, breakpoints);
  const std::size_t dim = h(t0).dim();
  const double sub_tol = tol / static_cast<double>(std::max<std::size_t>(pts.size() - 1, 1));

  PropagatorResult out{ComplexMatrix::identity(dim), 0, 0.0};
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    long steps = kInitialSteps;
    ComplexMatrix coarse = midpoint_pass(h, pts[s], pts[s + 1], steps, dim);
    double diff = 0.0;
    bool done = false;
    for (int k = 0; k < max_halvings && !done; ++k) {
      steps *= 2;
      ComplexMatrix fine = midpoint_pass(h, pts[s], pts[s + 1], steps, dim);
      diff = frobenius_distance(fine, coarse);
      coarse = fine;
      done = diff < sub_tol;
    }
    if (!done) {
      throw ConvergenceError("propagator did not converge on [" + std::to_string(pts[s]) + ", " +
                             std::to_string(pts[s + 1]) + "]: last difference " + std::to_string(diff) +
                             " with " + std::to_string(steps) + " steps");
    }
    out.u_final = coarse * out.u_final;
    out.step_count += steps;
    // second-order scheme: error of the finer pass ~ diff/3
    out.est_error += diff / 3.0;
  }
  return out;
}

ComplexMatrix midpoint_propagate(const HamiltonianFn& h, double t0, double t1, long n) {
  if (n < 1) throw InputError("step count must be >= 1");
  intervals(t0, t1, {});
  return midpoint_pass(h, t0, t1, n, h(t0).dim());
}

PhaseDecomposition phase_decomposition(const DriveParams& p, const ControlOptions& opts, double abs_tol) {
  validate_dressed_frame(p, opts, 401);
  const auto e_ds = [&](double t) { return corrected_pulses(p, t, opts).e_ds; };
  const auto bounds = quarter_boundaries(p);
  const auto bps = drive_breakpoints(p);

  PhaseDecomposition d{};
  for (int q = 0; q < 4; ++q) {
    const auto pts = intervals(bounds[q], bounds[q + 1], bps);
    double v = 0.0;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) v += integrate(e_ds, pts[s], pts[s + 1], abs_tol / 8.0);
    d.quarter_phase[q] = 0.5 * v;
    const double mid = 0.5 * (bounds[q] + bounds[q + 1]);
    (on_phi2_segment(p, mid) ? d.i_phi2 : d.i_phi1) += 0.5 * v;
  }
  d.gamma_g = std::numbers::pi - (p.phi2() - p.phi1());
  d.gamma_d = d.i_phi2 - d.i_phi1;
  d.gamma_t = d.gamma_g + d.gamma_d;
  d.segment_weight = 0.5 * (1.0 + std::cos(p.chi()));
  return d;
}

ComplexMatrix geometric_gate_matrix(double chi, double phi1, double gamma) {
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  const double cc = std::cos(chi), sc = std::sin(chi);
  return ComplexMatrix(2, {Complex(cg, cc * sg), kI * std::polar(1.0, -phi1) * (sc * sg),
                           kI * std::polar(1.0, phi1) * (sc * sg), Complex(cg, -cc * sg)});
}

ComplexMatrix ds_evolution_operator(const DriveParams& p, const ControlOptions& opts) {
  if (p.sigma() != 0.0) throw ContractError("closed-form propagator requires hard phase jumps (sigma = 0)");
  const auto d = phase_decomposition(p, opts);
  return geometric_gate_matrix(p.chi(), p.phi1(), d.gamma_t);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const ComplexMatrix& rho, double kappa1, double kappa2) {
  ComplexMatrix out = -kI * (h * rho - rho * h);
  // b- = |0><1|: 2 b rho b^+ = 2 rho11 |0><0|, b^+ b = |1><1|
  if (kappa1 != 0.0) {
    ComplexMatrix m(2);
    m(0, 0) = 2.0 * rho(1, 1);
    m(1, 1) = -2.0 * rho(1, 1);
    m(0, 1) = -rho(0, 1);
    m(1, 0) = -rho(1, 0);
    out += kappa1 * m;
  }
  // bz = |1><1|: 2 bz rho bz - {bz, rho} kills the coherences only
  if (kappa2 != 0.0) {
    ComplexMatrix m(2);
    m(0, 1) = -rho(0, 1);
    m(1, 0) = -rho(1, 0);
    out += kappa2 * m;
  }
  return out;
}

DensityMatrix propagate_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0, const NoiseParams& n,
                                 double t0, double t1, double tol, const std::vector<double>& breakpoints) {
  const OperatorSet out = evolve_lindblad(h, n, t0, t1, tol, breakpoints, {rho0.matrix()});
  const ComplexMatrix& r = out.front();
  if (std::abs(r.trace() - 1.0) > 1e-6) {
    throw ConvergenceError("Lindblad trace drifted to " + std::to_string(r.trace().real()));
  }
  // restore exact Hermiticity lost to rounding
  ComplexMatrix sym = 0.5 * (r + r.adjoint());
  try {
    return DensityMatrix(sym);
  } catch (const InputError& e) {
    throw ConvergenceError(std::string("Lindblad output is not a density matrix: ") + e.what());
  }
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
  if (rho.dim() != 2) throw ContractError("channel acts on 2x2 operators");
  ComplexMatrix out(2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) out += rho(r, c) * images_[2 * r + c];
  }
  return out;
}

QuantumChannel lindblad_channel(const HamiltonianFn& h, const NoiseParams& n, double t0, double t1, double tol,
                                const std::vector<double>& breakpoints) {
  OperatorSet units;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      ComplexMatrix e(2);
      e(r, c) = 1.0;
      units.push_back(e);
    }
  }
  const OperatorSet out = evolve_lindblad(h, n, t0, t1, tol, breakpoints, units);
  return QuantumChannel({out[0], out[1], out[2], out[3]});
}

}  // namespace satd
