#include "satd/gates.hpp"

#include <cmath>
#include <numbers>

#include "satd/errors.hpp"

namespace satd {

using std::numbers::pi;

GateSpec::GateSpec(GateKind kind, double gamma_g) : kind_(kind), gamma_g_(gamma_g) {
  if (!std::isfinite(gamma_g)) throw InputError("gamma_g must be finite");
}

GateSpec GateSpec::named(const std::string& name) {
  if (name == "s") return {GateKind::Uz, pi / 2};
  if (name == "not") return {GateKind::Ux, pi / 2};
  if (name == "cs") return {GateKind::ControlledUz, pi / 2};
  if (name == "cnot") return {GateKind::ControlledUx, pi / 2};
  throw InputError("unknown gate '" + name + "' (expected s, not, cs, cnot)");
}

double GateSpec::chi() const { return (kind_ == GateKind::Uz || kind_ == GateKind::ControlledUz) ? 0.0 : pi / 2; }

bool GateSpec::controlled() const { return kind_ == GateKind::ControlledUz || kind_ == GateKind::ControlledUx; }

PathKind GateSpec::path() const { return chi() == 0.0 ? PathKind::ZPath : PathKind::XPath; }

double GateSpec::phi2() const { return pi - gamma_g_; }

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Uz:
      return "Uz";
    case GateKind::Ux:
      return "Ux";
    case GateKind::ControlledUz:
      return "ControlledUz";
    case GateKind::ControlledUx:
      return "ControlledUx";
  }
  return "?";
}

ComplexMatrix ideal_gate(const GateSpec& g) {
  if (g.controlled()) throw ContractError("ideal_gate: controlled kind, use ideal_two_qubit");
  return geometric_gate_matrix(g.chi(), 0.0, g.gamma_g());
}

ComplexMatrix ideal_two_qubit(const GateSpec& g) {
  if (!g.controlled()) throw ContractError("ideal_two_qubit: single-qubit kind");
  ComplexMatrix u = ComplexMatrix::identity(4);
  u.set_block(0, geometric_gate_matrix(g.chi(), 0.0, g.gamma_g()));
  return u;
}

double avg_gate_fidelity(const ComplexMatrix& u0, const ComplexMatrix& ur) {
  if (u0.dim() != ur.dim()) throw ContractError("avg_gate_fidelity: dimension mismatch");
  if (!u0.is_unitary(1e-8)) throw ContractError("avg_gate_fidelity: target is not unitary");
  if (!ur.is_unitary(1e-8)) throw ContractError("avg_gate_fidelity: realized operator is not unitary");
  const ComplexMatrix m = u0.adjoint() * ur;
  const double d = static_cast<double>(u0.dim());
  return (std::norm(m.trace()) + (m * m.adjoint()).trace().real()) / (d * (d + 1.0));
}

double state_avg_fidelity(const GateSpec& g, const std::function<DensityMatrix(double)>& rho_of_theta,
                          int grid_size) {
  if (grid_size < 3 || grid_size % 2 == 0) throw InputError("grid_size must be odd and >= 3");
  const ComplexMatrix u0 = ideal_gate(g);
  const double h = 2.0 * pi / (grid_size - 1);
  double sum = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double th = i * h;
    const StateVector ideal = u0 * StateVector{std::cos(th), std::sin(th)};
    const double w = (i == 0 || i == grid_size - 1) ? 0.5 : 1.0;
    sum += w * rho_of_theta(th).expectation(ideal);
  }
  return sum / (grid_size - 1);
}

DriveParams drive_for_gate(const GateSpec& g, double omega0, double eta, double x, double sigma) {
  return DriveParams::from_ratios(omega0, eta, x, g.path(), 0.0, g.phi2(), sigma);
}

PropagatorResult realized_gate(const DriveParams& p, DriveMode mode, const NoiseParams& n, double tol,
                               const ControlOptions& opts) {
  n.validate();
  if (mode == DriveMode::Satd) validate_dressed_frame(p, opts, 401);
  const auto h = [&](double t) { return h_single(p, mode, n, t, opts); };
  return propagate_unitary(h, 0.0, p.total_time(), tol, drive_breakpoints(p));
}

PropagatorResult realized_two_qubit(const TwoQubitParams& q, DriveMode mode, const NoiseParams& n, double tol,
                                    const ControlOptions& opts) {
  n.validate();
  const DriveParams& p = q.drive;
  if (mode == DriveMode::Satd) validate_dressed_frame(p, opts, 401);
  // blocks evolve independently; propagate each as a 2x2 problem
  const auto h1 = [&](double t) { return h_single(p, mode, n, t, opts); };
  const auto h2 = [&](double t) {
    ComplexMatrix h = h_single(p, mode, n, t, opts);
    h(1, 1) += q.a_hf;
    return h;
  };
  const auto bps = drive_breakpoints(p);
  const PropagatorResult r1 = propagate_unitary(h1, 0.0, p.total_time(), 0.5 * tol, bps);
  const PropagatorResult r2 = propagate_unitary(h2, 0.0, p.total_time(), 0.5 * tol, bps);
  ComplexMatrix u(4);
  u.set_block(0, r1.u_final);
  ComplexMatrix frame = ComplexMatrix::identity(2);
  frame(1, 1) = std::polar(1.0, q.a_hf * p.total_time());
  u.set_block(2, frame * r2.u_final);
  return {u, r1.step_count + r2.step_count, r1.est_error + r2.est_error};
}

QuantumChannel realized_channel(const DriveParams& p, DriveMode mode, const NoiseParams& n, double tol,
                                const ControlOptions& opts) {
  n.validate();
  if (mode == DriveMode::Satd) validate_dressed_frame(p, opts, 401);
  const auto h = [&](double t) { return h_single(p, mode, n, t, opts); };
  return lindblad_channel(h, n, 0.0, p.total_time(), tol, drive_breakpoints(p));
}

double channel_fidelity(const GateSpec& g, const QuantumChannel& ch, int grid_size) {
  return state_avg_fidelity(
      g,
      [&](double th) {
        const StateVector psi{std::cos(th), std::sin(th)};
        const ComplexMatrix out = ch.apply(psi.projector());
        return DensityMatrix(0.5 * (out + out.adjoint()));
      },
      grid_size);
}

}  // namespace satd
