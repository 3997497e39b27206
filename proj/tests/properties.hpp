#pragma once

// Randomized invariant checks shared by the unit tests and the acceptance run.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "satd/dynamics.hpp"
#include "satd/errors.hpp"
#include "satd/hamiltonians.hpp"
#include "support.hpp"

namespace testing {

struct PropertyReport {
  int configs = 0;
  int checks = 0;
  std::vector<std::string> failures;
};

inline PropertyReport run_property_suite(int n, unsigned seed) {
  using namespace satd;
  PropertyReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto expect = [&](bool ok, int cfg, const char* what) {
    ++rep.checks;
    if (!ok && rep.failures.size() < 20) rep.failures.push_back("config " + std::to_string(cfg) + ": " + what);
  };

  for (int cfg = 0; cfg < n; ++cfg) {
    ++rep.configs;
    // matrix exponential
    const std::size_t dim = u(rng) < 0.5 ? 2 : 4;
    const ComplexMatrix hr = random_hermitian(rng, dim, 5.0 * u(rng));
    const double dt = 2.0 * u(rng);
    const ComplexMatrix e = expm_skew(hr, dt);
    expect(e.is_unitary(1e-12), cfg, "expm_skew unitary");
    expect(std::abs(e.determinant() - std::exp(-kI * dt * hr.trace())) < 1e-11, cfg, "det exp = exp(-i tr H dt)");

    // drive Hamiltonians at a random time
    const PathKind path = u(rng) < 0.5 ? PathKind::ZPath : PathKind::XPath;
    const double eta = 0.5 + 3.5 * u(rng);
    const double x = 2.0 + 6.0 * u(rng);
    const double phi2 = 0.3 + (kPi - 0.6) * u(rng);
    const double tau = x / kOmega0;
    const double sigma = path == PathKind::ZPath && u(rng) < 0.5 ? 0.1 * tau * u(rng) : 0.0;
    const DriveParams p = DriveParams::from_ratios(kOmega0, eta, x, path, 0.0, phi2, sigma);
    const NoiseParams noise{0.3 * (u(rng) - 0.5), 0.3 * (u(rng) - 0.5), 0.0, 0.0};
    const double t = p.total_time() * u(rng);
    try {
      for (const ComplexMatrix& h : {h0(p, t), h_satd(p, t), h_se(p, noise, t), h_tqd(p, t)}) {
        expect(h.is_hermitian(1e-10), cfg, "Hamiltonian Hermitian");
        expect(std::abs(h.trace()) < 1e-10 * kOmega0, cfg, "Hamiltonian traceless");
      }
      const ComplexMatrix htq = h_tq(TwoQubitParams(p, 100.0 + 3000.0 * u(rng)), t);
      expect(htq.is_hermitian(1e-10), cfg, "two-qubit Hamiltonian Hermitian");
    } catch (const FrameBreakdownError&) {
      // infeasible corner of the random box; the invariants do not apply
    }

    // unitary propagation of a random smooth generator
    const ComplexMatrix a = random_hermitian(rng, dim, 2.0);
    const ComplexMatrix b = random_hermitian(rng, dim, 2.0);
    const double w = 6.0 * u(rng);
    const auto hf = [&](double s) { return a + std::cos(w * s) * b; };
    const auto pr = propagate_unitary(hf, 0.0, 1.0, 1e-6);
    expect(pr.u_final.is_unitary(1e-9), cfg, "propagator unitary");
    expect(std::abs(std::abs(pr.u_final.determinant()) - 1.0) < 1e-9, cfg, "propagator |det| = 1");

    // Lindblad evolution of a random state
    const ComplexMatrix a2 = random_hermitian(rng, 2, 2.0);
    const ComplexMatrix b2 = random_hermitian(rng, 2, 2.0);
    const auto h2 = [&](double s) { return a2 + std::cos(w * s) * b2; };
    const NoiseParams ln{0.0, 0.0, 0.5 * u(rng), 0.5 * u(rng)};
    const DensityMatrix r0 = random_density(rng);
    try {
      const DensityMatrix r1 = propagate_lindblad(h2, r0, ln, 0.0, 1.0, 1e-8);
      expect(std::abs(r1.matrix().trace() - 1.0) < 1e-9, cfg, "Lindblad trace");
      expect(r1.matrix().is_hermitian(1e-10), cfg, "Lindblad Hermitian");
      expect(hermitian_eigenvalues(r1.matrix())[0] > -1e-10, cfg, "Lindblad positive");
    } catch (const Error& err) {
      expect(false, cfg, err.what());
    }
  }
  return rep;
}

}  // namespace testing
