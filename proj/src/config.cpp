#include "satd/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "satd/errors.hpp"

namespace satd {
namespace {

using nlohmann::json;
using std::numbers::pi;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

template <class T>
void read(const json& section, const std::string& prefix, const char* name, T& dst) {
  if (!section.contains(name)) return;
  try {
    dst = section.at(name).get<T>();
  } catch (const json::exception&) {
    bad(prefix + "." + name, "wrong type");
  }
}

template <class T>
void read_opt(const json& section, const std::string& prefix, const char* name, std::optional<T>& dst) {
  if (!section.contains(name) || section.at(name).is_null()) return;
  T v{};
  read(section, prefix, name, v);
  dst = v;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"drive", {"gate", "axis", "gamma_g", "phi2", "omega0_mhz", "eta", "x", "sigma_ns", "use_gz", "mode"}},
      {"noise", {"delta", "eps", "kappa1", "kappa2"}},
      {"two_qubit", {"ahf_mhz"}},
      {"numerics", {"tol", "lindblad_tol", "state_grid", "time_grid", "samples"}},
      {"sweep", {"eta_values", "grid_eta", "grid_x", "error_points", "sigma_ns_range"}},
      {"output", {"out", "jobs", "record_runtime"}},
  };
  return s;
}

void positive(double v, const char* key) {
  if (!std::isfinite(v) || v <= 0.0) bad(key, "must be finite and > 0");
}

void finite(double v, const char* key) {
  if (!std::isfinite(v)) bad(key, "must be finite");
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bad(key, "'" + s + "' is not a number");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config document must be an object");
  for (const auto& [section, body] : j.items()) {
    const auto it = schema().find(section);
    if (it == schema().end()) bad(section, "unknown section");
    if (!body.is_object()) bad(section, "must be an object");
    for (const auto& [key, _] : body.items()) {
      if (!it->second.count(key)) bad(section + "." + key, "unknown key");
    }
  }
  RunConfig c;
  const json empty = json::object();
  auto sec = [&](const char* name) -> const json& { return j.contains(name) ? j.at(name) : empty; };

  const json& d = sec("drive");
  read(d, "drive", "gate", c.gate);
  read(d, "drive", "axis", c.axis);
  read_opt(d, "drive", "gamma_g", c.gamma_g);
  read_opt(d, "drive", "phi2", c.phi2);
  read(d, "drive", "omega0_mhz", c.omega0_mhz);
  read(d, "drive", "eta", c.eta);
  read(d, "drive", "x", c.x);
  read(d, "drive", "sigma_ns", c.sigma_ns);
  read(d, "drive", "use_gz", c.use_gz);
  read(d, "drive", "mode", c.mode);

  const json& n = sec("noise");
  read(n, "noise", "delta", c.delta);
  read(n, "noise", "eps", c.eps);
  read(n, "noise", "kappa1", c.kappa1);
  read(n, "noise", "kappa2", c.kappa2);

  read(sec("two_qubit"), "two_qubit", "ahf_mhz", c.ahf_mhz);

  const json& m = sec("numerics");
  read(m, "numerics", "tol", c.tol);
  read(m, "numerics", "lindblad_tol", c.lindblad_tol);
  read(m, "numerics", "state_grid", c.state_grid);
  read(m, "numerics", "time_grid", c.time_grid);
  read(m, "numerics", "samples", c.samples);

  const json& s = sec("sweep");
  read(s, "sweep", "eta_values", c.eta_values);
  read(s, "sweep", "grid_eta", c.grid_eta);
  read(s, "sweep", "grid_x", c.grid_x);
  read(s, "sweep", "error_points", c.error_points);
  read(s, "sweep", "sigma_ns_range", c.sigma_ns_range);

  const json& o = sec("output");
  read(o, "output", "out", c.out);
  read(o, "output", "jobs", c.jobs);
  read(o, "output", "record_runtime", c.record_runtime);
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json d = {{"gate", gate},   {"axis", axis},         {"omega0_mhz", omega0_mhz}, {"eta", eta},
            {"x", x},         {"sigma_ns", sigma_ns}, {"use_gz", use_gz},         {"mode", mode},
            {"gamma_g", nullptr}, {"phi2", nullptr}};
  if (gamma_g) d["gamma_g"] = *gamma_g;
  if (phi2) d["phi2"] = *phi2;
  return {{"drive", d},
          {"noise", {{"delta", delta}, {"eps", eps}, {"kappa1", kappa1}, {"kappa2", kappa2}}},
          {"two_qubit", {{"ahf_mhz", ahf_mhz}}},
          {"numerics",
           {{"tol", tol},
            {"lindblad_tol", lindblad_tol},
            {"state_grid", state_grid},
            {"time_grid", time_grid},
            {"samples", samples}}},
          {"sweep",
           {{"eta_values", eta_values},
            {"grid_eta", grid_eta},
            {"grid_x", grid_x},
            {"error_points", error_points},
            {"sigma_ns_range", sigma_ns_range}}},
          {"output", {{"out", out}, {"jobs", jobs}, {"record_runtime", record_runtime}}}};
}

void RunConfig::validate() const {
  static const std::set<std::string> gates{"s", "not", "cs", "cnot", "custom"};
  if (!gates.count(gate)) bad("drive.gate", "'" + gate + "' is not one of s, not, cs, cnot, custom");
  if (axis != "z" && axis != "x") bad("drive.axis", "must be z or x");
  if (mode != "satd" && mode != "bare" && mode != "tqd") bad("drive.mode", "must be satd, bare or tqd");
  if (gamma_g) finite(*gamma_g, "drive.gamma_g");
  if (phi2) finite(*phi2, "drive.phi2");
  positive(omega0_mhz, "drive.omega0_mhz");
  if (!std::isfinite(eta) || eta <= 0.0 || eta > 10.0) bad("drive.eta", "must lie in (0, 10]");
  if (!std::isfinite(x) || x <= 0.0 || x > 100.0) bad("drive.x", "must lie in (0, 100]");
  if (!std::isfinite(sigma_ns) || sigma_ns < 0.0) bad("drive.sigma_ns", "must be finite and >= 0");
  const double tau_ns = 1e3 * x / (2.0 * pi * omega0_mhz);
  if (sigma_ns >= 0.5 * tau_ns) bad("drive.sigma_ns", "must be < tau/2 = " + std::to_string(0.5 * tau_ns) + " ns");
  finite(delta, "noise.delta");
  finite(eps, "noise.eps");
  if (!std::isfinite(kappa1) || kappa1 < 0.0) bad("noise.kappa1", "must be finite and >= 0");
  if (!std::isfinite(kappa2) || kappa2 < 0.0) bad("noise.kappa2", "must be finite and >= 0");
  positive(ahf_mhz, "two_qubit.ahf_mhz");
  positive(tol, "numerics.tol");
  positive(lindblad_tol, "numerics.lindblad_tol");
  if (state_grid < 3 || state_grid % 2 == 0) bad("numerics.state_grid", "must be odd and >= 3");
  if (time_grid < 3) bad("numerics.time_grid", "must be >= 3");
  if (samples < 2) bad("numerics.samples", "must be >= 2");
  if (eta_values.empty()) bad("sweep.eta_values", "must not be empty");
  for (double e : eta_values) {
    if (!std::isfinite(e) || e <= 0.0 || e > 10.0) bad("sweep.eta_values", "entries must lie in (0, 10]");
  }
  if (grid_eta < 2) bad("sweep.grid_eta", "must be >= 2");
  if (grid_x < 2) bad("sweep.grid_x", "must be >= 2");
  if (error_points < 2) bad("sweep.error_points", "must be >= 2");
  for (double s : parse_range(sigma_ns_range, "sweep.sigma_ns_range")) {
    if (s < 0.0) bad("sweep.sigma_ns_range", "entries must be >= 0");
  }
  if (out.empty()) bad("output.out", "must not be empty");
  if (jobs < 1) bad("output.jobs", "must be >= 1");
}

GateSpec RunConfig::gate_spec() const {
  if (gate != "custom" && !gamma_g && !phi2) return GateSpec::named(gate);
  double g = pi / 2;
  if (gamma_g) g = *gamma_g;
  if (phi2) g = pi - *phi2;
  GateKind k;
  if (gate == "custom") {
    k = axis == "z" ? GateKind::Uz : GateKind::Ux;
  } else {
    k = GateSpec::named(gate).kind();
  }
  return {k, g};
}

DriveParams RunConfig::drive() const {
  try {
    return drive_for_gate(gate_spec(), omega0(), eta, x, sigma_ns * 1e-3);
  } catch (const InputError& e) {
    throw ConfigError(std::string("drive parameters: ") + e.what());
  }
}

NoiseParams RunConfig::noise() const { return {delta, eps, kappa1, kappa2}; }

DriveMode RunConfig::drive_mode() const {
  if (mode == "bare") return DriveMode::Bare;
  if (mode == "tqd") return DriveMode::Tqd;
  return DriveMode::Satd;
}

double RunConfig::omega0() const { return 2.0 * pi * omega0_mhz; }

double RunConfig::a_hf() const { return 2.0 * pi * ahf_mhz; }

SweepSettings RunConfig::settings() const {
  SweepSettings s;
  s.omega0 = omega0();
  s.x = x;
  s.tol = tol;
  s.lindblad_tol = lindblad_tol;
  s.state_grid = state_grid;
  s.time_grid = time_grid;
  s.jobs = jobs;
  s.record_runtime = record_runtime;
  s.controls.use_gz = use_gz;
  return s;
}

std::vector<double> parse_range(const std::string& spec, const std::string& key) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::stringstream ss(spec);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) || c.find(':') != std::string::npos) {
      bad(key, "range must be start:stop:step");
    }
    const double lo = to_double(a, key), hi = to_double(b, key), st = to_double(c, key);
    if (!(st > 0.0) || hi < lo) bad(key, "range needs step > 0 and stop >= start");
    const long n = std::lround(std::floor((hi - lo) / st + 1e-9)) + 1;
    if (n > 100000) bad(key, "range has too many points");
    for (long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * st);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item, key));
  if (out.empty()) bad(key, "empty list");
  return out;
}

std::pair<int, int> parse_grid(const std::string& spec, const std::string& key) {
  const auto xpos = spec.find('x');
  if (xpos == std::string::npos) bad(key, "grid must be NxM");
  const double a = to_double(spec.substr(0, xpos), key);
  const double b = to_double(spec.substr(xpos + 1), key);
  if (a < 2 || b < 2 || a != std::floor(a) || b != std::floor(b)) bad(key, "grid sizes must be integers >= 2");
  return {static_cast<int>(a), static_cast<int>(b)};
}

}  // namespace satd
