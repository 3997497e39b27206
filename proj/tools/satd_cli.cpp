// satd: pulse inspection, single gate runs and figure sweeps.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "satd/config.hpp"
#include "satd/errors.hpp"
#include "satd/experiments.hpp"
#include "satd/sweep_io.hpp"

using namespace satd;
using nlohmann::json;
using std::numbers::pi;

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> gate, axis;
  std::optional<double> gamma_g, eta, x, omega0_mhz, phi2;
  std::optional<std::string> sigma_ns;
  std::optional<double> delta, eps, kappa1, kappa2, ahf_mhz, tol;
  std::optional<std::string> out, grid;
  std::optional<unsigned> jobs;
  bool no_gz = false, no_satd = false, satd = false, tqd = false, runtime = false;
};

RunConfig build_config(const Flags& f, bool sigma_is_range) {
  RunConfig c = f.config ? RunConfig::from_file(*f.config) : RunConfig{};
  auto set = [](auto& dst, const auto& src) {
    if (src) dst = *src;
  };
  set(c.gate, f.gate);
  set(c.axis, f.axis);
  if (f.gamma_g) c.gamma_g = f.gamma_g;
  if (f.phi2) c.phi2 = f.phi2;
  set(c.eta, f.eta);
  set(c.x, f.x);
  set(c.omega0_mhz, f.omega0_mhz);
  set(c.delta, f.delta);
  set(c.eps, f.eps);
  set(c.kappa1, f.kappa1);
  set(c.kappa2, f.kappa2);
  set(c.ahf_mhz, f.ahf_mhz);
  set(c.tol, f.tol);
  set(c.out, f.out);
  set(c.jobs, f.jobs);
  if (f.sigma_ns) {
    if (sigma_is_range) {
      c.sigma_ns_range = *f.sigma_ns;
    } else {
      const auto v = parse_range(*f.sigma_ns, "--sigma-ns");
      if (v.size() != 1) throw ConfigError("config key '--sigma-ns': expected a single value");
      c.sigma_ns = v.front();
    }
  }
  if (f.grid) std::tie(c.grid_eta, c.grid_x) = parse_grid(*f.grid, "--grid");
  if (f.no_gz) c.use_gz = false;
  if (f.no_satd) c.mode = "bare";
  if (f.tqd) c.mode = "tqd";
  if (f.runtime) c.record_runtime = true;
  c.validate();
  return c;
}

void report(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << '\n'; }

int cmd_pulses(const RunConfig& c) {
  const DriveParams p = c.drive();
  SweepResult r;
  if (c.mode == "satd") {
    r = emit_pulse_comparison(p, {c.use_gz}, c.samples);
  } else {
    r.sweep_id = "figA2_pulses";
    const auto times = linspace(0.0, p.total_time(), c.samples);
    r.axes = {{"t_us", times}};
    r.output_names = {"delta", "omega_r", "phi", "theta"};
    for (double t : times) {
      const auto s = adiabatic_sample(p, t);
      r.records.push_back({{t}, {s.delta, s.omega_r, s.phi, s.theta}, "", 0.0});
    }
  }
  r.sweep_id = "pulses_" + c.gate + (c.mode == "satd" ? "_satd" : "_bare");
  r.metadata["satd"] = c.mode == "satd";
  report(write_sweep(r, c.out, c.to_json()));
  if (r.metadata.contains("open_trajectory")) {
    std::cout << "omega_r_tilde(0) = " << format_double(r.metadata["omega_r_tilde_at_0"].get<double>())
              << " rad/us (open trajectory: " << (r.metadata["open_trajectory"].get<bool>() ? "yes" : "no")
              << ")\n";
  }
  return 0;
}

int cmd_gate(const RunConfig& c) {
  const GateSpec g = c.gate_spec();
  const DriveParams p = c.drive();
  const NoiseParams n = c.noise();
  const ControlOptions opts{c.use_gz};
  json rep = {{"config", c.to_json()}};

  if (g.controlled()) {
    const TwoQubitParams q(p, c.a_hf());
    const auto r = realized_two_qubit(q, c.drive_mode(), n, c.tol, opts);
    const double f = avg_gate_fidelity(ideal_two_qubit(g), r.u_final);
    rep["fidelity"] = f;
    rep["step_count"] = r.step_count;
    rep["est_error"] = r.est_error;
  } else {
    const auto r = realized_gate(p, c.drive_mode(), n, c.tol, opts);
    rep["fidelity"] = avg_gate_fidelity(ideal_gate(g), r.u_final);
    rep["step_count"] = r.step_count;
    rep["est_error"] = r.est_error;
    if (n.kappa1 > 0.0 || n.kappa2 > 0.0) {
      const auto ch = realized_channel(p, c.drive_mode(), n, c.lindblad_tol, opts);
      rep["state_avg_fidelity"] = channel_fidelity(g, ch, c.state_grid);
    }
  }
  if (c.mode == "satd") {
    const auto d = phase_decomposition(p, opts);
    rep["gamma_g"] = d.gamma_g;
    rep["gamma_d"] = d.gamma_d;
    rep["gamma_t"] = d.gamma_t;
    rep["i_phi1"] = d.i_phi1;
    rep["i_phi2"] = d.i_phi2;
  }
  std::cout << "gate " << c.gate << " (" << to_string(g.kind()) << ", gamma_g = " << format_double(g.gamma_g())
            << ")  eta = " << format_double(c.eta) << "  x = " << format_double(c.x) << "  mode = " << c.mode
            << (c.use_gz ? "" : " (no g_z)") << '\n';
  for (const char* k : {"fidelity", "state_avg_fidelity", "gamma_g", "gamma_d", "step_count", "est_error"}) {
    if (rep.contains(k)) std::cout << "  " << k << " = " << rep[k].dump() << '\n';
  }
  std::filesystem::create_directories(c.out);
  const auto path = std::filesystem::path(c.out) / ("gate_" + c.gate + ".json");
  std::ofstream(path) << rep.dump(2) << '\n';
  report(path);
  return 0;
}

SweepResult merge_columns(std::string id, const SweepResult& a, const SweepResult& b, const std::string& col,
                          const std::string& name_a, const std::string& name_b) {
  SweepResult r;
  r.sweep_id = std::move(id);
  r.axes = a.axes;
  r.output_names = {name_a, name_b};
  r.record_runtime = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    SweepRecord rec;
    rec.params = a.records[i].params;
    rec.outputs = {a.value(i, col), b.value(i, col)};
    rec.flag = a.records[i].flag.empty() ? b.records[i].flag : a.records[i].flag;
    r.records.push_back(std::move(rec));
  }
  r.metadata = {{name_a, a.metadata}, {name_b, b.metadata}};
  return r;
}

int cmd_sweep(const RunConfig& c, const std::string& name, const Flags& f) {
  const SweepSettings s = c.settings();
  const json snap = c.to_json();
  const auto errors = linspace(-0.15, 0.15, c.error_points);
  const GateSpec gs = GateSpec::named("s"), gn = GateSpec::named("not");
  const GateSpec gcs = GateSpec::named("cs"), gcn = GateSpec::named("cnot");

  if (name == "fig2") {
    report(write_sweep(
        sweep_amplitude_ratio(linspace(0.1, 4.0, c.grid_eta), linspace(0.5, 6.0, c.grid_x), s), c.out, snap));
  } else if (name == "fig3") {
    report(write_sweep(sweep_gz_diagnostics(linspace(0.1, 4.0, c.grid_eta), {2.0, 4.0}, s), c.out, snap));
    report(write_sweep(gz_energy_series(c.eta, s, c.samples), c.out, snap));
  } else if (name == "fig4") {
    for (const GateSpec& g : {gs, gn}) {
      auto d = sweep_systematic_errors(g, errors, {0.0}, c.eta_values, s);
      d.sweep_id = "fig4_delta_" + to_string(g.kind());
      report(write_sweep(d, c.out, snap));
      auto e = sweep_systematic_errors(g, {0.0}, errors, c.eta_values, s);
      e.sweep_id = "fig4_eps_" + to_string(g.kind());
      report(write_sweep(e, c.out, snap));
    }
  } else if (name == "fig5") {
    for (const GateSpec& g : {gs, gn}) {
      auto r = sweep_systematic_errors(g, errors, errors, {2.0}, s);
      r.sweep_id = "fig5_" + to_string(g.kind());
      report(write_sweep(r, c.out, snap));
    }
    for (const GateSpec& g : {gcs, gcn}) {
      auto r = sweep_two_qubit_errors(g, c.a_hf(), errors, errors, 2.0, s);
      r.sweep_id = "fig5_" + to_string(g.kind());
      report(write_sweep(r, c.out, snap));
    }
  } else if (name == "fig6") {
    NoiseParams base{0.05, 0.05, 5e-4, 0.0};
    if (f.delta) base.delta_err = c.delta;
    if (f.eps) base.eps_err = c.eps;
    if (f.kappa1) base.kappa1 = c.kappa1;
    const auto k2 = linspace(1e-3, 1e-2, 10);
    const auto a = sweep_lindblad(gs, k2, base, 2.0, s);
    const auto b = sweep_lindblad(gn, k2, base, 2.0, s);
    report(write_sweep(merge_columns("fig6_lindblad", a, b, "fidelity", "fidelity_S", "fidelity_NOT"), c.out, snap));
  } else if (name == "fig7") {
    auto grid = logspace(10.0, 500.0, 30);
    for (auto& v : grid) v *= 2.0 * pi;
    report(write_sweep(sweep_hyperfine(gcs, grid, c.noise(), 2.0, s), c.out, snap));
  } else if (name == "figA1") {
    auto sig = parse_range(c.sigma_ns_range, "sweep.sigma_ns_range");
    for (auto& v : sig) v *= 1e-3;
    report(write_sweep(sweep_phase_smoothing(gs, sig, c.eta_values, s), c.out, snap));
  } else if (name == "figA2") {
    const DriveParams p = drive_for_gate(gs, c.omega0(), c.eta, c.x);
    report(write_sweep(emit_pulse_comparison(p, {c.use_gz}, c.samples), c.out, snap));
  } else {
    std::cerr << "error: unknown sweep '" << name << "'; valid: fig2 fig3 fig4 fig5 fig6 fig7 figA1 figA2\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SATD geometric gates: pulses, gate runs and figure sweeps.\n"
               "Frequencies are linear MHz on the command line (multiplied by 2*pi internally to rad/us);\n"
               "times are in us unless the flag says ns; rates are in 1/us."};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--gate", f.gate, "gate: s, not, cs, cnot, custom");
  app.add_option("--axis", f.axis, "custom gate axis: z or x");
  app.add_option("--gamma-g", f.gamma_g, "geometric phase (rad), default pi/2");
  app.add_option("--eta", f.eta, "eta = Delta0/Omega0 (dimensionless)");
  app.add_option("--x", f.x, "x = tau*Omega0 (dimensionless)");
  app.add_option("--omega0-mhz", f.omega0_mhz, "Omega0/2pi in MHz (default 3)");
  app.add_option("--phi2", f.phi2, "middle-meridian phase (rad); sets gamma_g = pi - phi2");
  app.add_option("--sigma-ns", f.sigma_ns, "phase-smoothing width in ns; for 'sweep figA1' a range start:stop:step");
  app.add_option("--delta", f.delta, "detuning error delta in units of Omega0");
  app.add_option("--eps", f.eps, "fractional Rabi amplitude error epsilon");
  app.add_option("--kappa1", f.kappa1, "decay rate kappa1 in 1/us");
  app.add_option("--kappa2", f.kappa2, "dephasing rate kappa2 in 1/us");
  app.add_option("--ahf-mhz", f.ahf_mhz, "hyperfine coupling A_hf/2pi in MHz (default 130)");
  app.add_flag("--no-gz", f.no_gz, "disable the dynamical-phase-cancelling g_z");
  app.add_flag("--satd", f.satd, "use the SATD-corrected pulses (default)");
  app.add_flag("--no-satd", f.no_satd, "use the bare orange-slice pulses");
  app.add_flag("--tqd", f.tqd, "use transitionless driving (V = 1) instead of SATD");
  app.add_option("--out", f.out, "output directory (default ./out)");
  app.add_option("--jobs", f.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--tol", f.tol, "propagator tolerance (Frobenius, default 1e-8)");
  app.add_option("--grid", f.grid, "sweep fig2/fig3 grid override NxM (eta points x x points)");
  app.add_flag("--record-runtime", f.runtime, "add a per-row runtime column to sweep CSVs");

  auto* pulses = app.add_subcommand("pulses", "write original and corrected pulse time series");
  auto* gate = app.add_subcommand("gate", "propagate one gate and report fidelity and phases");
  auto* sweep = app.add_subcommand("sweep", "regenerate figure data");
  std::string sweep_name;
  sweep->add_option("name", sweep_name, "fig2 fig3 fig4 fig5 fig6 fig7 figA1 figA2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if ((pulses->parsed() || gate->parsed()) && !f.gate && !f.config) {
      throw ConfigError("config key '--gate': required (or give --config)");
    }
    if (f.satd && (f.no_satd || f.tqd)) throw ConfigError("config key '--satd': conflicts with --no-satd/--tqd");
    const RunConfig c = build_config(f, sweep->parsed());
    if (pulses->parsed()) return cmd_pulses(c);
    if (gate->parsed()) return cmd_gate(c);
    return cmd_sweep(c, sweep_name, f);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
