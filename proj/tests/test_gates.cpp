#include <cmath>
#include <random>

#include "doctest.h"
#include "satd/errors.hpp"
#include "satd/gates.hpp"
#include "support.hpp"

using namespace satd;
using testing::kOmega0;
using testing::kPi;

TEST_CASE("ideal gates") {
  CHECK(frobenius_distance(ideal_gate(GateSpec::named("s")), kI * pauli::z()) < 1e-15);
  CHECK(frobenius_distance(ideal_gate(GateSpec::named("not")), kI * pauli::x()) < 1e-15);
  CHECK(frobenius_distance(ideal_gate(GateSpec(GateKind::Uz, 0.0)), ComplexMatrix::identity(2)) < 1e-15);
  const ComplexMatrix cnot = ideal_two_qubit(GateSpec::named("cnot"));
  CHECK(frobenius_distance(cnot.block(0), kI * pauli::x()) < 1e-15);
  CHECK(frobenius_distance(cnot.block(2), ComplexMatrix::identity(2)) < 1e-15);
  CHECK(cnot(0, 2) == Complex(0.0));
  CHECK(GateSpec::named("cs").controlled());
  CHECK(GateSpec::named("not").path() == PathKind::XPath);
  CHECK(GateSpec::named("s").phi2() == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(GateSpec::named("t"), InputError);
}

TEST_CASE("average gate fidelity") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(avg_gate_fidelity(i2, i2) == doctest::Approx(1.0));
  CHECK(avg_gate_fidelity(i2, pauli::x()) == doctest::Approx(1.0 / 3.0));
  CHECK(avg_gate_fidelity(pauli::z(), std::polar(1.0, 0.7) * pauli::z()) == doctest::Approx(1.0));
  CHECK(avg_gate_fidelity(ComplexMatrix::identity(4), ComplexMatrix::identity(4)) == doctest::Approx(1.0));
  ComplexMatrix bad = i2;
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(avg_gate_fidelity(i2, bad), ContractError);

  // invariant under a common change of basis and bounded by [0, 1]
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const std::size_t dim = k % 2 ? 4 : 2;
    const ComplexMatrix a = expm_skew(testing::random_hermitian(rng, dim), 1.0);
    const ComplexMatrix b = expm_skew(testing::random_hermitian(rng, dim), 1.0);
    const ComplexMatrix w = expm_skew(testing::random_hermitian(rng, dim), 1.0);
    const double f = avg_gate_fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(avg_gate_fidelity(w * a * w.adjoint(), w * b * w.adjoint()) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("state-averaged fidelity") {
  const GateSpec s = GateSpec::named("s");
  const ComplexMatrix u = ideal_gate(s);
  const auto perfect = [&](double th) {
    return DensityMatrix::pure(u * StateVector{std::cos(th), std::sin(th)});
  };
  CHECK(state_avg_fidelity(s, perfect) == doctest::Approx(1.0).epsilon(1e-14));
  // fully dephased output: F(th) = cos^4 + sin^4, mean 3/4
  const auto dephased = [&](double th) {
    const double c = std::cos(th) * std::cos(th);
    return DensityMatrix(ComplexMatrix::diagonal(std::array<Complex, 2>{c, 1.0 - c}));
  };
  CHECK(state_avg_fidelity(s, dephased) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(state_avg_fidelity(s, perfect, 1000), InputError);

  // grid refinement changes a noisy-gate value by less than 1e-6
  const DriveParams p = drive_for_gate(s, kOmega0, 2.0, 2.0);
  const QuantumChannel ch = realized_channel(p, DriveMode::Satd, {0.05, 0.05, 5e-4, 0.005}, 1e-9);
  CHECK(std::abs(channel_fidelity(s, ch, 1001) - channel_fidelity(s, ch, 2001)) < 1e-6);
}

TEST_CASE("realized single-qubit gates") {
  for (const char* name : {"s", "not"}) {
    const GateSpec g = GateSpec::named(name);
    const DriveParams p = drive_for_gate(g, kOmega0, 2.0, 2.0);
    const auto r = realized_gate(p, DriveMode::Satd, {}, 1e-8);
    CHECK(avg_gate_fidelity(ideal_gate(g), r.u_final) > 1.0 - 1e-6);
    // TQD also reaches the target; the bare drive does not at this speed
    CHECK(avg_gate_fidelity(ideal_gate(g), realized_gate(p, DriveMode::Tqd, {}, 1e-8).u_final) > 1.0 - 1e-6);
    CHECK(avg_gate_fidelity(ideal_gate(g), realized_gate(p, DriveMode::Bare, {}, 1e-8).u_final) < 0.99);
  }
  // without g_z the dynamical phase survives
  const GateSpec s = GateSpec::named("s");
  const DriveParams p = drive_for_gate(s, kOmega0, 1.0, 2.0);
  CHECK(avg_gate_fidelity(ideal_gate(s), realized_gate(p, DriveMode::Satd, {}, 1e-8, {false}).u_final) < 0.99);
}

TEST_CASE("two-qubit gate in the strong-hyperfine limit") {
  const GateSpec g = GateSpec::named("cs");
  const DriveParams p = drive_for_gate(g, kOmega0, 2.0, 2.0);
  const auto weak = realized_two_qubit(TwoQubitParams(p, 2 * kPi * 30.0), DriveMode::Satd, {}, 1e-8);
  const auto strong = realized_two_qubit(TwoQubitParams(p, 2 * kPi * 1000.0), DriveMode::Satd, {}, 1e-8);
  const double fw = avg_gate_fidelity(ideal_two_qubit(g), weak.u_final);
  const double fs = avg_gate_fidelity(ideal_two_qubit(g), strong.u_final);
  CHECK(fs > fw);
  CHECK(fs > 0.999);
  CHECK(strong.u_final.is_unitary(1e-8));
}
