#pragma once

// Dressed-state corrections: mu, g_x, g_z, the corrected pulses and E_DS.

#include <optional>
#include <vector>

#include "satd/pulses.hpp"

namespace satd {

struct ControlOptions {
  /// Apply the segment-alternating g_z that cancels the dynamical phase.
  bool use_gz = true;
};

struct SATDControls {
  double t;
  double mu;
  double mu_dot;
  double g_x;
  double g_z;
  double delta_tilde;
  double omega_r_tilde;
  double phi_tilde;
  double e_ds;
};

struct MuValue {
  double mu;
  double mu_dot;
};

/// alpha such that E_DS is identical on both meridians: (cos^2 phi1 - cos^2 phi2)/4,
/// i.e. sin^2(phi2)/4 for phi1 = 0.
double gz_alpha(const DriveParams& p);

/// s * alpha * theta_dot^2 / Omega, s = +1 on the phi2 segment and -1 elsewhere.
double gz_design(const DriveParams& p, double t);

/// mu and its analytic derivative. Throws FrameBreakdownError when the
/// diagonal coefficient Omega + g_z + phi_dot (1 - cos theta) is not positive.
MuValue mu_of_t(const DriveParams& p, double t, const ControlOptions& opts = {});

double gx_of_t(const DriveParams& p, double t, const ControlOptions& opts = {});

/// Full control set at t. When both components of the corrected coupling
/// vanish phi_tilde is undefined; it is taken from prev_phi_tilde if given,
/// else from the nominal phi.
SATDControls corrected_pulses(const DriveParams& p, double t, const ControlOptions& opts = {},
                              std::optional<double> prev_phi_tilde = std::nullopt);

/// corrected_pulses on a list of times, carrying phi_tilde forward through
/// points where it is undefined.
std::vector<SATDControls> sample_controls(const DriveParams& p, const std::vector<double>& times,
                                          const ControlOptions& opts = {});

/// P = 1 + alpha (theta_dot/Omega)^2.
double scaling_factor(const DriveParams& p, double t);

enum class Channel { Rabi, Detuning };

/// max_t |z| / max_t |z_tilde| for z = Omega_R or Delta. Maxima from a uniform
/// grid of grid_points samples refined by Brent's method around the best one.
double amplitude_ratio(const DriveParams& p, Channel which, const ControlOptions& opts = {},
                       int grid_points = 4001);

/// Peak of |g_z/Omega| over [0, 4tau] (grid plus refinement).
double peak_gz_over_omega(const DriveParams& p, int grid_points = 4001);

/// Image of an outer-segment time on the middle segment under the reflection
/// that maps one meridian onto the other (about 2tau for ZPath; about tau or
/// 3tau for XPath). Omega and |theta_dot| agree at t and mirror_time(t).
double mirror_time(const DriveParams& p, double t);

/// max over an n-point grid of the outer segments of |E(t) - E(mirror(t))| / E(t),
/// i.e. the pointwise mismatch of the two dynamical-phase integrands.
double integrand_mismatch(const DriveParams& p, const ControlOptions& opts = {}, int n = 10000);

/// Throws FrameBreakdownError if the dressed frame is invalid anywhere on an
/// n-point grid.
void validate_dressed_frame(const DriveParams& p, const ControlOptions& opts = {}, int n = 4001);

}  // namespace satd
