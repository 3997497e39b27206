#include "satd/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "satd/errors.hpp"

namespace satd {
namespace {

ComplexMatrix with_errors(double delta, Complex coupling, const NoiseParams& n, double omega0) {
  n.validate();
  const double d = delta + n.delta_err * omega0;
  const Complex c = (1.0 + n.eps_err) * coupling;
  return ComplexMatrix(2, {0.5 * d, 0.5 * std::conj(c), 0.5 * c, -0.5 * d});
}

}  // namespace

void NoiseParams::validate() const {
  auto fin = [](double v, const char* name) {
    if (!std::isfinite(v)) throw InputError(std::string(name) + " must be finite");
  };
  fin(delta_err, "delta_err");
  fin(eps_err, "eps_err");
  fin(kappa1, "kappa1");
  fin(kappa2, "kappa2");
  if (kappa1 < 0.0) throw InputError("kappa1 must be >= 0");
  if (kappa2 < 0.0) throw InputError("kappa2 must be >= 0");
}

TwoQubitParams::TwoQubitParams(DriveParams drive_, double a_hf_) : drive(drive_), a_hf(a_hf_) {
  if (!std::isfinite(a_hf) || a_hf <= 0.0) throw InputError("a_hf must be finite and > 0");
}

ComplexMatrix drive_matrix(double delta, double omega_r, double phi) {
  const Complex c = omega_r * std::polar(1.0, phi);
  return ComplexMatrix(2, {0.5 * delta, 0.5 * std::conj(c), 0.5 * c, -0.5 * delta});
}

ComplexMatrix h0(const DriveParams& p, double t) {
  const auto s = adiabatic_sample(p, t);
  return drive_matrix(s.delta, s.omega_r, s.phi);
}

ComplexMatrix h_satd(const DriveParams& p, double t, const ControlOptions& opts) {
  const auto c = corrected_pulses(p, t, opts);
  return drive_matrix(c.delta_tilde, c.omega_r_tilde, c.phi_tilde);
}

ComplexMatrix h_se(const DriveParams& p, const NoiseParams& n, double t, const ControlOptions& opts) {
  const auto c = corrected_pulses(p, t, opts);
  return with_errors(c.delta_tilde, c.omega_r_tilde * std::polar(1.0, c.phi_tilde), n, p.omega0());
}

ComplexMatrix h_tqd(const DriveParams& p, double t) {
  const PulseJet j = pulse_jet(p, t);
  const double st = std::sin(j.theta), ct = std::cos(j.theta);
  const double sp = std::sin(j.phi), cp = std::cos(j.phi);
  // b = theta_dot e_phi - phi_dot sin(theta) e_theta
  const double bx = -j.theta_dot * sp - j.phi_dot * st * ct * cp;
  const double by = j.theta_dot * cp - j.phi_dot * st * ct * sp;
  const double bz = j.phi_dot * st * st;
  ComplexMatrix h = drive_matrix(j.delta, j.omega_r, j.phi);
  h += 0.5 * ComplexMatrix(2, {bz, Complex(bx, -by), Complex(bx, by), -bz});
  return h;
}

ComplexMatrix h_single(const DriveParams& p, DriveMode mode, const NoiseParams& n, double t,
                       const ControlOptions& opts) {
  switch (mode) {
    case DriveMode::Bare: {
      const auto s = adiabatic_sample(p, t);
      return with_errors(s.delta, s.omega_r * std::polar(1.0, s.phi), n, p.omega0());
    }
    case DriveMode::Satd:
      return h_se(p, n, t, opts);
    case DriveMode::Tqd: {
      const ComplexMatrix h = h_tqd(p, t);
      return with_errors((h(0, 0) - h(1, 1)).real(), 2.0 * h(1, 0), n, p.omega0());
    }
  }
  throw ContractError("unknown drive mode");
}

ComplexMatrix h_tq(const TwoQubitParams& q, double t, DriveMode mode, const NoiseParams& n,
                   const ControlOptions& opts) {
  const ComplexMatrix h1 = h_single(q.drive, mode, n, t, opts);
  ComplexMatrix h2 = h1;
  h2(1, 1) += q.a_hf;
  ComplexMatrix h(4);
  h.set_block(0, h1);
  h.set_block(2, h2);
  return h;
}

ComplexMatrix adiabatic_frame(const DriveParams& p, double t) {
  const auto s = adiabatic_sample(p, t);
  const double c = std::cos(0.5 * s.theta), sn = std::sin(0.5 * s.theta);
  const Complex e = std::polar(1.0, s.phi);
  return ComplexMatrix(2, {c, sn * std::conj(e), sn * e, -c});
}

}  // namespace satd
