#include "satd/controls.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satd/errors.hpp"
#include "satd/numkit.hpp"

namespace satd {
namespace {

struct GzJet {
  double g, g_dot;
};

GzJet gz_jet(const DriveParams& p, const PulseJet& j, bool on) {
  if (!on) return {0.0, 0.0};
  const double sa = (j.on_phi2_segment ? 1.0 : -1.0) * gz_alpha(p);
  const double g = sa * j.theta_dot * j.theta_dot / j.omega;
  const double g_dot = sa * (2.0 * j.theta_dot * j.theta_ddot / j.omega -
                             j.theta_dot * j.theta_dot * j.omega_dot / (j.omega * j.omega));
  return {g, g_dot};
}

// Everything evaluated at one instant. tan(mu) = a_y / w_eff where w_eff is the
// S_z coefficient and a_y the S_y coefficient of the adiabatic-frame Hamiltonian
// (with the phase-rate terms when phi is smooth).
struct Core {
  PulseJet j;
  GzJet gz;
  double w_eff;
  double a_y;
  double mu;
  double mu_dot;
  double g_x;
};

Core core(const DriveParams& p, double t, const ControlOptions& opts) {
  Core c{};
  c.j = pulse_jet(p, t);
  const PulseJet& j = c.j;
  c.gz = gz_jet(p, j, opts.use_gz);

  const double st = std::sin(j.theta), ct = std::cos(j.theta);
  const double sp = std::sin(j.phi), cp = std::cos(j.phi);

  c.w_eff = j.omega + c.gz.g + j.phi_dot * (1.0 - ct);
  c.a_y = j.theta_dot * cp - j.phi_dot * st * sp;
  if (!(c.w_eff > 0.0)) {
    throw FrameBreakdownError("dressed frame breaks down at t = " + std::to_string(t) +
                              " (Omega + g_z + phi_dot(1 - cos theta) = " + std::to_string(c.w_eff) + ")");
  }
  const double n_dot = j.theta_ddot * cp - j.theta_dot * j.phi_dot * sp - j.phi_ddot * st * sp -
                       j.phi_dot * j.theta_dot * ct * sp - j.phi_dot * j.phi_dot * st * cp;
  const double d_dot = j.omega_dot + c.gz.g_dot + j.phi_ddot * (1.0 - ct) + j.phi_dot * j.theta_dot * st;

  c.mu = std::atan(c.a_y / c.w_eff);
  c.mu_dot = (n_dot * c.w_eff - c.a_y * d_dot) / (c.a_y * c.a_y + c.w_eff * c.w_eff);
  c.g_x = -c.mu_dot + j.theta_dot * sp + j.phi_dot * st * cp;
  return c;
}

}  // namespace

double gz_alpha(const DriveParams& p) {
  const double c1 = std::cos(p.phi1()), c2 = std::cos(p.phi2());
  return 0.25 * (c1 * c1 - c2 * c2);
}

double gz_design(const DriveParams& p, double t) { return gz_jet(p, pulse_jet(p, t), true).g; }

MuValue mu_of_t(const DriveParams& p, double t, const ControlOptions& opts) {
  const Core c = core(p, t, opts);
  return {c.mu, c.mu_dot};
}

double gx_of_t(const DriveParams& p, double t, const ControlOptions& opts) { return core(p, t, opts).g_x; }

SATDControls corrected_pulses(const DriveParams& p, double t, const ControlOptions& opts,
                              std::optional<double> prev_phi_tilde) {
  const Core c = core(p, t, opts);
  const PulseJet& j = c.j;
  const double st = std::sin(j.theta), ct = std::cos(j.theta);
  const double sp = std::sin(j.phi), cp = std::cos(j.phi);
  const double w = c.gz.g + j.omega;

  SATDControls out{};
  out.t = t;
  out.mu = c.mu;
  out.mu_dot = c.mu_dot;
  out.g_x = c.g_x;
  out.g_z = c.gz.g;
  out.delta_tilde = w * ct + c.g_x * st * cp;
  const double re = w * st - c.g_x * ct * cp;
  const double im = c.g_x * sp;
  out.omega_r_tilde = std::hypot(re, im);
  if (re == 0.0 && im == 0.0) {
    out.phi_tilde = prev_phi_tilde.value_or(j.phi);
  } else {
    out.phi_tilde = j.phi + std::atan2(im, re);
  }
  out.e_ds = std::hypot(c.w_eff, c.a_y);
  return out;
}

std::vector<SATDControls> sample_controls(const DriveParams& p, const std::vector<double>& times,
                                          const ControlOptions& opts) {
  std::vector<SATDControls> out;
  out.reserve(times.size());
  std::optional<double> prev;
  for (double t : times) {
    out.push_back(corrected_pulses(p, t, opts, prev));
    prev = out.back().phi_tilde;
  }
  return out;
}

double scaling_factor(const DriveParams& p, double t) {
  const PulseJet j = pulse_jet(p, t);
  const double r = j.theta_dot / j.omega;
  return 1.0 + gz_alpha(p) * r * r;
}

double amplitude_ratio(const DriveParams& p, Channel which, const ControlOptions& opts, int grid_points) {
  const double T = p.total_time();
  const bool rabi = which == Channel::Rabi;
  const auto orig = [&](double t) {
    return rabi ? omega_r_of_t(p, t) : std::abs(delta_of_t(p, t));
  };
  const auto corr = [&](double t) {
    const SATDControls c = corrected_pulses(p, t, opts);
    return rabi ? c.omega_r_tilde : std::abs(c.delta_tilde);
  };
  const double num = maximize(orig, 0.0, T, grid_points).value;
  const double den = maximize(corr, 0.0, T, grid_points).value;
  if (!(den > 0.0)) throw GeometryError("corrected pulse vanishes identically");
  return num / den;
}

double peak_gz_over_omega(const DriveParams& p, int grid_points) {
  const auto f = [&](double t) {
    const PulseJet j = pulse_jet(p, t);
    return std::abs(gz_design(p, t)) / j.omega;
  };
  return maximize(f, 0.0, p.total_time(), grid_points).value;
}

double mirror_time(const DriveParams& p, double t) {
  const double tau = p.tau();
  if (p.path() == PathKind::ZPath) return 4.0 * tau - t;
  return t <= tau ? 2.0 * tau - t : 6.0 * tau - t;
}

double integrand_mismatch(const DriveParams& p, const ControlOptions& opts, int n) {
  const double h = p.total_time() / (n - 1);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = i * h;
    if (on_phi2_segment(p, t)) continue;
    const double e1 = corrected_pulses(p, t, opts).e_ds;
    const double e2 = corrected_pulses(p, std::clamp(mirror_time(p, t), 0.0, p.total_time()), opts).e_ds;
    worst = std::max(worst, std::abs(e1 - e2) / e1);
  }
  return worst;
}

void validate_dressed_frame(const DriveParams& p, const ControlOptions& opts, int n) {
  const double h = p.total_time() / (n - 1);
  for (int i = 0; i < n; ++i) core(p, i * h, opts);
}

}  // namespace satd
