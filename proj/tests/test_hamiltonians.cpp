#include <cmath>
#include <random>

#include "doctest.h"
#include "satd/errors.hpp"
#include "satd/hamiltonians.hpp"
#include "support.hpp"

using namespace satd;
using testing::kOmega0;
using testing::kPi;

namespace {

DriveParams sgate(double eta = 1.0, double x = 2.0) {
  return DriveParams::from_ratios(kOmega0, eta, x, PathKind::ZPath, 0.0, kPi / 2);
}

}  // namespace

TEST_CASE("bare Hamiltonian") {
  const DriveParams p = sgate(1.0);
  const ComplexMatrix h = h0(p, 0.0);
  CHECK(frobenius_distance(h, kOmega0 * pauli::z()) < 1e-12);  // diag(D0, -D0) with D0 = Omega0

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double t = p.total_time() * u(rng);
    const ComplexMatrix hm = h0(p, t);
    const PulseSample s = adiabatic_sample(p, t);
    const auto e = hermitian_eigenvalues(hm);
    CHECK(e[0] == doctest::Approx(-0.5 * s.omega));
    CHECK(e[1] == doctest::Approx(0.5 * s.omega));
    // the frame columns are the eigenvectors with +Omega/2 and -Omega/2
    const ComplexMatrix a = adiabatic_frame(p, t);
    const ComplexMatrix d = a.adjoint() * hm * a;
    CHECK(std::abs(d(0, 1)) < 1e-10 * kOmega0);
    CHECK(d(0, 0).real() == doctest::Approx(0.5 * s.omega));
    CHECK(a.is_unitary());
  }
}

TEST_CASE("SATD Hamiltonian equals H0 plus the rotated control term") {
  for (const DriveParams& p : {sgate(1.0), DriveParams::from_ratios(kOmega0, 2.0, 2.0, PathKind::XPath, 0.0, kPi / 2)}) {
    for (int i = 0; i < 100; ++i) {
      const double t = p.total_time() * (i + 0.37) / 100.0;
      const SATDControls c = corrected_pulses(p, t);
      const ComplexMatrix a = adiabatic_frame(p, t);
      const ComplexMatrix lhs = a.adjoint() * (h_satd(p, t) - h0(p, t)) * a;
      const ComplexMatrix rhs = 0.5 * (c.g_x * pauli::x() + c.g_z * pauli::z());
      CHECK(frobenius_distance(lhs, rhs) < 1e-9 * kOmega0);
    }
  }
}

TEST_CASE("Hermitian and traceless everywhere") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const DriveParams p = sgate(2.0);
  const NoiseParams n{0.05, -0.03, 0.0, 0.0};
  for (int i = 0; i < 1000; ++i) {
    const double t = p.total_time() * u(rng);
    for (const ComplexMatrix& h : {h0(p, t), h_satd(p, t), h_se(p, n, t), h_tqd(p, t)}) {
      CHECK(h.is_hermitian());
      CHECK(std::abs(h.trace()) < 1e-12);
    }
  }
}

TEST_CASE("systematic error perturbation") {
  const DriveParams p = sgate(1.0);
  const double t = 0.7 * p.tau();
  CHECK(frobenius_distance(h_se(p, {}, t), h_satd(p, t)) == 0.0);
  const ComplexMatrix d = h_se(p, {0.05, 0.0, 0.0, 0.0}, t) - h_satd(p, t);
  CHECK(d(0, 0).real() == doctest::Approx(0.5 * 0.05 * kOmega0));
  CHECK(d(1, 1).real() == doctest::Approx(-0.5 * 0.05 * kOmega0));
  CHECK(std::abs(d(0, 1)) < 1e-14);
  const ComplexMatrix e = h_se(p, {0.0, 0.1, 0.0, 0.0}, t);
  CHECK(std::abs(e(0, 1)) == doctest::Approx(1.1 * std::abs(h_satd(p, t)(0, 1))));
  CHECK(e(0, 0).real() == doctest::Approx(h_satd(p, t)(0, 0).real()));
  CHECK_THROWS_AS(h_se(p, {0.0, 0.0, -1.0, 0.0}, t), InputError);
}

TEST_CASE("two-qubit Hamiltonian") {
  const double a_hf = 2.0 * kPi * 130.0;
  const TwoQubitParams q(sgate(2.0), a_hf);
  for (int i = 0; i <= 50; ++i) {
    const double t = q.drive.total_time() * i / 50.0;
    const ComplexMatrix h = h_tq(q, t);
    CHECK(h.is_hermitian());
    CHECK(h.trace().real() == doctest::Approx(a_hf));
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 2; c < 4; ++c) {
        CHECK(h(r, c) == Complex(0.0));
        CHECK(h(c, r) == Complex(0.0));
      }
    }
    CHECK(frobenius_distance(h.block(0), h_satd(q.drive, t)) < 1e-15);
    ComplexMatrix h2 = h.block(2);
    h2(1, 1) -= a_hf;
    CHECK(frobenius_distance(h2, h_satd(q.drive, t)) < 1e-9);
  }
  CHECK_THROWS_AS(TwoQubitParams(sgate(), 0.0), InputError);
}

TEST_CASE("counterdiabatic term") {
  // H_TQD - H0 = 1/2 (theta_dot e_phi - phi_dot sin(theta) e_theta).sigma
  const DriveParams p = sgate(1.0);
  const double t = 0.4 * p.tau();
  const PulseSample s = adiabatic_sample(p, t);
  const ComplexMatrix d = h_tqd(p, t) - h0(p, t);
  const ComplexMatrix expected =
      0.5 * s.theta_dot * (-std::sin(s.phi) * pauli::x() + std::cos(s.phi) * pauli::y());
  CHECK(frobenius_distance(d, expected) < 1e-12);
}
