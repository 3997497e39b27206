#pragma once

// Orange-slice drive schedules: detuning, Rabi frequency and microwave phase
// as functions of time, plus the polar angle of the field on the Bloch sphere.
//
// Units: angular frequencies in rad/us, times in us.

#include <vector>

namespace satd {

/// Which pair of cosine schedules drives the path. ZPath starts at the north
/// pole (chi = 0) and realizes U_z; XPath starts on the equator (chi = pi/2)
/// and realizes U_x.
enum class PathKind { ZPath, XPath };

const char* to_string(PathKind kind);

/// Constants defining one gate run. Immutable once constructed; eta and x are
/// derived, never stored.
class DriveParams {
 public:
  /// Throws InputError naming the first violated field.
  DriveParams(double omega0, double delta0, double tau, PathKind path, double phi1, double phi2,
              double sigma = 0.0);

  /// omega0 with eta = delta0/omega0 and x = tau*omega0.
  static DriveParams from_ratios(double omega0, double eta, double x, PathKind path, double phi1,
                                 double phi2, double sigma = 0.0);

  [[nodiscard]] double omega0() const { return omega0_; }
  [[nodiscard]] double delta0() const { return delta0_; }
  [[nodiscard]] double tau() const { return tau_; }
  [[nodiscard]] double total_time() const { return 4.0 * tau_; }
  [[nodiscard]] double eta() const { return delta0_ / omega0_; }
  [[nodiscard]] double x() const { return tau_ * omega0_; }
  [[nodiscard]] PathKind path() const { return path_; }
  [[nodiscard]] double phi1() const { return phi1_; }
  [[nodiscard]] double phi2() const { return phi2_; }
  /// Polar angle theta(0).
  [[nodiscard]] double chi() const;
  [[nodiscard]] double sigma() const { return sigma_; }

  [[nodiscard]] DriveParams with_sigma(double sigma) const;

 private:
  double omega0_;
  double delta0_;
  double tau_;
  PathKind path_;
  double phi1_;
  double phi2_;
  double sigma_;
};

/// Instantaneous drive and its adiabatic angles.
struct PulseSample {
  double t;
  double delta;
  double omega_r;
  double phi;
  double phi_dot;
  double theta;
  double theta_dot;
  double omega;
};

/// Values and first two time derivatives of everything the correction
/// functions need. theta and omega are derived from delta and omega_r.
struct PulseJet {
  double t;
  double delta, delta_dot, delta_ddot;
  double omega_r, omega_r_dot, omega_r_ddot;
  double phi, phi_dot, phi_ddot;
  double omega, omega_dot;
  double theta, theta_dot, theta_ddot;
  bool on_phi2_segment;
};

struct PhaseValue {
  double phi;
  double phi_dot;
};

double delta_of_t(const DriveParams& p, double t);
double omega_r_of_t(const DriveParams& p, double t);
PhaseValue phi_of_t(const DriveParams& p, double t);
PulseSample adiabatic_sample(const DriveParams& p, double t);
PulseJet pulse_jet(const DriveParams& p, double t);

/// Quarter index in {0,1,2,3}; a boundary t = k*tau belongs to the earlier quarter.
int quarter_index(const DriveParams& p, double t);

/// True on the middle segment of the path, where the nominal phase is phi2
/// (ZPath: (2tau, 4tau]; XPath: (tau, 3tau]).
bool on_phi2_segment(const DriveParams& p, double t);

/// Pole crossings where the nominal phase jumps and the detuning flips sign.
std::vector<double> phase_jump_times(const DriveParams& p);

/// {0, tau, 2tau, 3tau, 4tau}.
std::vector<double> quarter_boundaries(const DriveParams& p);

/// Points where the Hamiltonian is not smooth or varies fastest: quarter
/// boundaries plus, when sigma > 0, a +-10 sigma window around each jump.
std::vector<double> drive_breakpoints(const DriveParams& p);

/// Polar angle of the state carried along the path. The field angle theta
/// restarts from the pole after each sign flip of the detuning, while the
/// carried state follows -n on the phi2 segment: this returns theta on the
/// phi1 segments and pi - theta on the phi2 segment, i.e. chi -> pi -> 0 -> chi.
double tracked_polar_angle(const DriveParams& p, double t);

}  // namespace satd
