#include "satd/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "satd/errors.hpp"

namespace satd {
namespace {

using std::numbers::pi;

// Sign of the constant term in each quarter: Delta = delta0 (cos u + kDelta[k]),
// Omega_R = omega0 (1 + kOmega[k] cos u), u = pi (t - k tau)/tau.
constexpr int kDeltaSignZ[4] = {+1, -1, +1, -1};
constexpr int kOmegaSignZ[4] = {-1, +1, -1, +1};
constexpr int kDeltaSignX[4] = {-1, +1, -1, +1};
constexpr int kOmegaSignX[4] = {+1, -1, +1, -1};

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("DriveParams: " + what);
}

void check_time(const DriveParams& p, double t) {
  const double slack = 1e-12 * p.total_time();
  if (!std::isfinite(t) || t < -slack || t > p.total_time() + slack) {
    throw InputError("time " + std::to_string(t) + " outside [0, " + std::to_string(p.total_time()) + "]");
  }
}

struct Schedule {
  double value, rate, accel;
};

struct Schedules {
  Schedule delta;
  Schedule omega_r;
};

Schedules schedules(const DriveParams& p, double t) {
  check_time(p, t);
  const int k = quarter_index(p, t);
  const double w = pi / p.tau();
  const double u = w * (t - k * p.tau());
  const double c = std::cos(u);
  const double s = std::sin(u);
  const bool z = p.path() == PathKind::ZPath;
  const int sd = z ? kDeltaSignZ[k] : kDeltaSignX[k];
  const int so = z ? kOmegaSignZ[k] : kOmegaSignX[k];
  Schedules out;
  out.delta = {p.delta0() * (c + sd), -p.delta0() * w * s, -p.delta0() * w * w * c};
  out.omega_r = {p.omega0() * (1.0 + so * c), -p.omega0() * so * w * s, -p.omega0() * so * w * w * c};
  // cos(pi) leaves ~1e-16 residue; Omega_R is non-negative by construction
  out.omega_r.value = std::max(out.omega_r.value, 0.0);
  return out;
}

struct PhaseJet {
  double phi, phi_dot, phi_ddot;
};

PhaseJet phase_jet(const DriveParams& p, double t) {
  const double dphi = p.phi2() - p.phi1();
  if (p.sigma() == 0.0) {
    return {on_phi2_segment(p, t) ? p.phi2() : p.phi1(), 0.0, 0.0};
  }
  // Each jump is a tanh step of height +-dphi centered on the pole crossing.
  PhaseJet out{p.phi1(), 0.0, 0.0};
  const auto jumps = phase_jump_times(p);
  for (std::size_t j = 0; j < jumps.size(); ++j) {
    const double sign = (j == 0) ? 1.0 : -1.0;
    const double th = std::tanh((t - jumps[j]) / p.sigma());
    const double sech2 = 1.0 - th * th;
    out.phi += sign * 0.5 * dphi * (1.0 + th);
    out.phi_dot += sign * 0.5 * dphi * sech2 / p.sigma();
    out.phi_ddot += sign * 0.5 * dphi * (-2.0 * th * sech2) / (p.sigma() * p.sigma());
  }
  return out;
}

}  // namespace

const char* to_string(PathKind kind) { return kind == PathKind::ZPath ? "z" : "x"; }

DriveParams::DriveParams(double omega0, double delta0, double tau, PathKind path, double phi1, double phi2,
                         double sigma)
    : omega0_(omega0), delta0_(delta0), tau_(tau), path_(path), phi1_(phi1), phi2_(phi2), sigma_(sigma) {
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be finite and > 0");
  require(std::isfinite(delta0) && delta0 >= 0.0, "delta0 must be finite and >= 0");
  require(std::isfinite(tau) && tau > 0.0, "tau must be finite and > 0");
  require(std::isfinite(phi1), "phi1 must be finite");
  require(std::isfinite(phi2), "phi2 must be finite");
  require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be finite and >= 0");
  require(sigma < 0.5 * tau, "sigma must be < tau/2");
}

DriveParams DriveParams::from_ratios(double omega0, double eta, double x, PathKind path, double phi1, double phi2,
                                     double sigma) {
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be finite and > 0");
  return DriveParams(omega0, eta * omega0, x / omega0, path, phi1, phi2, sigma);
}

double DriveParams::chi() const { return path_ == PathKind::ZPath ? 0.0 : pi / 2.0; }

DriveParams DriveParams::with_sigma(double sigma) const {
  return DriveParams(omega0_, delta0_, tau_, path_, phi1_, phi2_, sigma);
}

int quarter_index(const DriveParams& p, double t) {
  const int k = static_cast<int>(std::ceil(t / p.tau() - 1e-12)) - 1;
  return std::clamp(k, 0, 3);
}

bool on_phi2_segment(const DriveParams& p, double t) {
  const int k = quarter_index(p, t);
  return p.path() == PathKind::ZPath ? k >= 2 : (k == 1 || k == 2);
}

std::vector<double> phase_jump_times(const DriveParams& p) {
  if (p.path() == PathKind::ZPath) return {2.0 * p.tau()};
  return {p.tau(), 3.0 * p.tau()};
}

std::vector<double> quarter_boundaries(const DriveParams& p) {
  return {0.0, p.tau(), 2.0 * p.tau(), 3.0 * p.tau(), 4.0 * p.tau()};
}

std::vector<double> drive_breakpoints(const DriveParams& p) {
  auto pts = quarter_boundaries(p);
  if (p.sigma() > 0.0) {
    for (double j : phase_jump_times(p)) {
      for (double k : {-10.0, -3.0, 3.0, 10.0}) {
        const double t = j + k * p.sigma();
        if (t > 0.0 && t < p.total_time()) pts.push_back(t);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double delta_of_t(const DriveParams& p, double t) { return schedules(p, t).delta.value; }

double omega_r_of_t(const DriveParams& p, double t) { return schedules(p, t).omega_r.value; }

PhaseValue phi_of_t(const DriveParams& p, double t) {
  check_time(p, t);
  const auto j = phase_jet(p, t);
  return {j.phi, j.phi_dot};
}

PulseJet pulse_jet(const DriveParams& p, double t) {
  const Schedules s = schedules(p, t);
  const PhaseJet ph = phase_jet(p, t);
  PulseJet j{};
  j.t = t;
  j.delta = s.delta.value;
  j.delta_dot = s.delta.rate;
  j.delta_ddot = s.delta.accel;
  j.omega_r = s.omega_r.value;
  j.omega_r_dot = s.omega_r.rate;
  j.omega_r_ddot = s.omega_r.accel;
  j.phi = ph.phi;
  j.phi_dot = ph.phi_dot;
  j.phi_ddot = ph.phi_ddot;
  const double omega2 = j.delta * j.delta + j.omega_r * j.omega_r;
  if (!(omega2 > 0.0)) {
    throw GeometryError("Omega(t) = 0 at t = " + std::to_string(t) + " (delta0 = 0?)");
  }
  j.omega = std::sqrt(omega2);
  j.omega_dot = (j.delta * j.delta_dot + j.omega_r * j.omega_r_dot) / j.omega;
  j.theta = std::atan2(j.omega_r, j.delta);
  j.theta_dot = (j.omega_r_dot * j.delta - j.delta_dot * j.omega_r) / omega2;
  j.theta_ddot = (j.omega_r_ddot * j.delta - j.delta_ddot * j.omega_r) / omega2 -
                 2.0 * j.theta_dot * j.omega_dot / j.omega;
  j.on_phi2_segment = on_phi2_segment(p, t);
  return j;
}

PulseSample adiabatic_sample(const DriveParams& p, double t) {
  const PulseJet j = pulse_jet(p, t);
  return {t, j.delta, j.omega_r, j.phi, j.phi_dot, j.theta, j.theta_dot, j.omega};
}

double tracked_polar_angle(const DriveParams& p, double t) {
  const PulseJet j = pulse_jet(p, t);
  return j.on_phi2_segment ? pi - j.theta : j.theta;
}

}  // namespace satd
