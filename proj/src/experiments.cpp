#include "satd/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "satd/errors.hpp"
#include "satd/version.hpp"

namespace satd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using RowFn = std::function<std::vector<double>(const std::vector<double>&)>;

std::string flag_for(const std::exception& e) {
  if (dynamic_cast<const FrameBreakdownError*>(&e)) return "frame_breakdown";
  if (dynamic_cast<const GeometryError*>(&e)) return "geometry";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  return "error";
}

nlohmann::json settings_json(const SweepSettings& s) {
  return {{"omega0_rad_per_us", s.omega0}, {"x", s.x},
          {"tol", s.tol},                  {"lindblad_tol", s.lindblad_tol},
          {"state_grid", s.state_grid},    {"time_grid", s.time_grid},
          {"use_gz", s.controls.use_gz}};
}

nlohmann::json noise_json(const NoiseParams& n) {
  return {{"delta", n.delta_err}, {"eps", n.eps_err}, {"kappa1", n.kappa1}, {"kappa2", n.kappa2}};
}

SweepResult run_grid(std::string id, std::vector<SweepAxis> axes, std::vector<std::string> outputs,
                     const SweepSettings& s, const RowFn& fn) {
  SweepResult r;
  r.sweep_id = std::move(id);
  r.axes = std::move(axes);
  r.output_names = std::move(outputs);
  r.record_runtime = s.record_runtime;
  r.metadata["settings"] = settings_json(s);
  r.metadata["version"] = kVersion;

  std::size_t rows = 1;
  for (const auto& a : r.axes) rows *= a.values.size();
  r.records.resize(rows);
  const auto& axes_ref = r.axes;
  const std::size_t n_out = r.output_names.size();

  parallel_for(rows, s.jobs, [&](std::size_t i) {
    SweepRecord& rec = r.records[i];
    rec.params.resize(axes_ref.size());
    std::size_t rem = i;
    for (std::size_t a = axes_ref.size(); a-- > 0;) {
      const auto& v = axes_ref[a].values;
      rec.params[a] = v[rem % v.size()];
      rem /= v.size();
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      rec.outputs = fn(rec.params);
      if (rec.outputs.size() != n_out) throw ContractError("sweep row returned wrong number of outputs");
    } catch (const ContractError&) {
      throw;
    } catch (const Error& e) {
      rec.outputs.assign(n_out, kNaN);
      rec.flag = flag_for(e);
    }
    if (s.record_runtime) {
      rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  });
  return r;
}

}  // namespace

std::size_t SweepResult::output_index(const std::string& name) const {
  for (std::size_t i = 0; i < output_names.size(); ++i) {
    if (output_names[i] == name) return i;
  }
  throw ContractError("sweep " + sweep_id + " has no output '" + name + "'");
}

double SweepResult::value(std::size_t row, const std::string& name) const {
  return records.at(row).outputs.at(output_index(name));
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw InputError("grid needs at least one point");
  if (n == 1) return {a};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("log grid bounds must be > 0");
  auto v = linspace(std::log(a), std::log(b), n);
  for (auto& x : v) x = std::exp(x);
  v.front() = a;
  v.back() = b;
  return v;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_line needs two or more paired points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

SweepResult sweep_amplitude_ratio(const std::vector<double>& eta_grid, const std::vector<double>& x_grid,
                                  const SweepSettings& s) {
  for (double e : eta_grid)
    if (!(e > 0.0 && e <= 10.0)) throw InputError("eta grid values must lie in (0, 10]");
  for (double x : x_grid)
    if (!(x > 0.0 && x <= 100.0)) throw InputError("x grid values must lie in (0, 100]");
  const GateSpec g = GateSpec::named("s");
  auto r = run_grid("fig2_amplitude_ratio", {{"eta", eta_grid}, {"x", x_grid}}, {"R_rabi", "R_detuning"}, s,
                    [&](const std::vector<double>& q) {
                      const DriveParams p = drive_for_gate(g, s.omega0, q[0], q[1]);
                      validate_dressed_frame(p, s.controls, s.time_grid);
                      return std::vector<double>{amplitude_ratio(p, Channel::Rabi, s.controls, s.time_grid),
                                                 amplitude_ratio(p, Channel::Detuning, s.controls, s.time_grid)};
                    });
  r.metadata["gate"] = "s";
  return r;
}

SweepResult sweep_gz_diagnostics(const std::vector<double>& eta_grid, const std::vector<double>& x_values,
                                 const SweepSettings& s) {
  const GateSpec g = GateSpec::named("s");
  auto r = run_grid("fig3_gz_peak", {{"x", x_values}, {"eta", eta_grid}}, {"peak_gz_over_omega", "peak_times_x2"},
                    s, [&](const std::vector<double>& q) {
                      const DriveParams p = drive_for_gate(g, s.omega0, q[1], q[0]);
                      const double peak = peak_gz_over_omega(p, s.time_grid);
                      return std::vector<double>{peak, peak * q[0] * q[0]};
                    });
  r.metadata["gate"] = "s";
  return r;
}

SweepResult gz_energy_series(double eta, const SweepSettings& s, int n) {
  const GateSpec g = GateSpec::named("s");
  const DriveParams p = drive_for_gate(g, s.omega0, eta, s.x);
  const auto times = linspace(0.0, p.total_time(), n);
  SweepSettings serial = s;
  serial.jobs = 1;
  auto r = run_grid("fig3_energies", {{"t_us", times}},
                    {"e_ds_no_gz", "e_ds_gz", "omega_plus_gz", "omega0_plus_gz", "scaling_P", "delta", "omega_r"},
                    serial, [&](const std::vector<double>& q) {
                      const double t = q[0];
                      const auto with = corrected_pulses(p, t, {true});
                      const auto without = corrected_pulses(p, t, {false});
                      const auto a = adiabatic_sample(p, t);
                      return std::vector<double>{without.e_ds, with.e_ds,     a.omega + with.g_z,
                                                 p.omega0() + with.g_z, scaling_factor(p, t), a.delta,
                                                 a.omega_r};
                    });
  double defect = 0.0;
  for (double t : times) {
    defect = std::max(defect, std::abs(corrected_pulses(p, t, {true}).e_ds -
                                       corrected_pulses(p, p.total_time() - t, {true}).e_ds));
  }
  r.metadata["eta"] = eta;
  r.metadata["symmetry_defect"] = defect;
  return r;
}

SweepResult sweep_systematic_errors(const GateSpec& g, const std::vector<double>& delta_grid,
                                    const std::vector<double>& eps_grid, const std::vector<double>& eta_values,
                                    const SweepSettings& s) {
  const ComplexMatrix u0 = ideal_gate(g);
  auto r = run_grid("systematic_errors_" + to_string(g.kind()),
                    {{"eta", eta_values}, {"delta", delta_grid}, {"eps", eps_grid}}, {"fidelity", "infidelity"}, s,
                    [&](const std::vector<double>& q) {
                      const DriveParams p = drive_for_gate(g, s.omega0, q[0], s.x);
                      NoiseParams n;
                      n.delta_err = q[1];
                      n.eps_err = q[2];
                      const auto u = realized_gate(p, DriveMode::Satd, n, s.tol, s.controls).u_final;
                      const double f = avg_gate_fidelity(u0, u);
                      return std::vector<double>{f, 1.0 - f};
                    });
  r.metadata["gate"] = to_string(g.kind());
  r.metadata["gamma_g"] = g.gamma_g();
  return r;
}

SweepResult sweep_lindblad(const GateSpec& g, const std::vector<double>& kappa2_grid, const NoiseParams& base,
                           double eta, const SweepSettings& s) {
  const DriveParams p = drive_for_gate(g, s.omega0, eta, s.x);
  auto r = run_grid("fig6_lindblad_" + to_string(g.kind()), {{"kappa2", kappa2_grid}}, {"fidelity"}, s,
                    [&](const std::vector<double>& q) {
                      NoiseParams n = base;
                      n.kappa2 = q[0];
                      const auto ch = realized_channel(p, DriveMode::Satd, n, s.lindblad_tol, s.controls);
                      return std::vector<double>{channel_fidelity(g, ch, s.state_grid)};
                    });
  std::vector<double> xs, ys;
  for (const auto& rec : r.records) {
    if (rec.flag.empty()) xs.push_back(rec.params[0]), ys.push_back(rec.outputs[0]);
  }
  if (xs.size() >= 2) {
    const LinearFit f = fit_line(xs, ys);
    r.metadata["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
  }
  r.metadata["gate"] = to_string(g.kind());
  r.metadata["eta"] = eta;
  r.metadata["noise"] = noise_json(base);
  return r;
}

SweepResult sweep_hyperfine(const GateSpec& g, const std::vector<double>& a_hf_grid, const NoiseParams& noise,
                            double eta, const SweepSettings& s) {
  const ComplexMatrix u0 = ideal_two_qubit(g);
  const DriveParams p = drive_for_gate(g, s.omega0, eta, s.x);
  auto r = run_grid("fig7_hyperfine_" + to_string(g.kind()), {{"a_hf", a_hf_grid}}, {"fidelity", "infidelity"}, s,
                    [&](const std::vector<double>& q) {
                      const TwoQubitParams tq(p, q[0]);
                      const auto u = realized_two_qubit(tq, DriveMode::Satd, noise, s.tol, s.controls).u_final;
                      const double f = avg_gate_fidelity(u0, u);
                      return std::vector<double>{f, 1.0 - f};
                    });
  r.metadata["gate"] = to_string(g.kind());
  r.metadata["eta"] = eta;
  r.metadata["noise"] = noise_json(noise);
  r.metadata["a_hf_units"] = "rad/us";
  return r;
}

SweepResult sweep_two_qubit_errors(const GateSpec& g, double a_hf, const std::vector<double>& delta_grid,
                                   const std::vector<double>& eps_grid, double eta, const SweepSettings& s) {
  const ComplexMatrix u0 = ideal_two_qubit(g);
  const TwoQubitParams tq(drive_for_gate(g, s.omega0, eta, s.x), a_hf);
  auto r = run_grid("two_qubit_errors_" + to_string(g.kind()), {{"delta", delta_grid}, {"eps", eps_grid}},
                    {"fidelity", "infidelity"}, s, [&](const std::vector<double>& q) {
                      NoiseParams n;
                      n.delta_err = q[0];
                      n.eps_err = q[1];
                      const auto u = realized_two_qubit(tq, DriveMode::Satd, n, s.tol, s.controls).u_final;
                      const double f = avg_gate_fidelity(u0, u);
                      return std::vector<double>{f, 1.0 - f};
                    });
  r.metadata["gate"] = to_string(g.kind());
  r.metadata["eta"] = eta;
  r.metadata["a_hf"] = a_hf;
  return r;
}

SweepResult sweep_phase_smoothing(const GateSpec& g, const std::vector<double>& sigma_grid,
                                  const std::vector<double>& eta_values, const SweepSettings& s) {
  const ComplexMatrix u0 = ideal_gate(g);
  auto r = run_grid("figA1_phase_smoothing_" + to_string(g.kind()), {{"eta", eta_values}, {"sigma_us", sigma_grid}},
                    {"fidelity", "infidelity"}, s, [&](const std::vector<double>& q) {
                      const DriveParams p = drive_for_gate(g, s.omega0, q[0], s.x, q[1]);
                      const auto u = realized_gate(p, DriveMode::Satd, {}, s.tol, s.controls).u_final;
                      const double f = avg_gate_fidelity(u0, u);
                      return std::vector<double>{f, 1.0 - f};
                    });
  r.metadata["gate"] = to_string(g.kind());
  return r;
}

SweepResult emit_pulse_comparison(const DriveParams& p, const ControlOptions& opts, int n) {
  const auto times = linspace(0.0, p.total_time(), n);
  const auto ctl = sample_controls(p, times, opts);
  SweepResult r;
  r.sweep_id = "figA2_pulses";
  r.axes = {{"t_us", times}};
  r.output_names = {"delta", "omega_r", "phi", "delta_tilde", "omega_r_tilde", "theta_tilde", "phi_tilde",
                    "g_x", "g_z", "mu", "e_ds"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto a = adiabatic_sample(p, times[i]);
    const auto& c = ctl[i];
    SweepRecord rec;
    rec.params = {times[i]};
    rec.outputs = {a.delta,       a.omega_r, a.phi, c.delta_tilde, c.omega_r_tilde,
                   std::atan2(c.omega_r_tilde, c.delta_tilde), c.phi_tilde, c.g_x, c.g_z, c.mu, c.e_ds};
    r.records.push_back(std::move(rec));
  }
  r.metadata["version"] = kVersion;
  r.metadata["drive"] = {{"omega0", p.omega0()}, {"delta0", p.delta0()}, {"tau", p.tau()},
                         {"eta", p.eta()},       {"x", p.x()},           {"path", to_string(p.path())},
                         {"phi1", p.phi1()},     {"phi2", p.phi2()},     {"sigma", p.sigma()},
                         {"use_gz", opts.use_gz}};
  r.metadata["omega_r_tilde_at_0"] = ctl.front().omega_r_tilde;
  r.metadata["open_trajectory"] = ctl.front().omega_r_tilde > 1e-12 * p.omega0();
  r.metadata["theta_tilde_at_T"] = r.records.back().outputs[5];
  return r;
}

}  // namespace satd
