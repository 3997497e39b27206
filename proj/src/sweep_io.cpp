#include "satd/sweep_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "satd/errors.hpp"

namespace satd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const SweepResult& r, std::ostream& out) {
  bool first = true;
  auto col = [&](const std::string& s) {
    if (!first) out << ',';
    out << s;
    first = false;
  };
  for (const auto& a : r.axes) col(a.name);
  for (const auto& o : r.output_names) col(o);
  col("flag");
  if (r.record_runtime) col("runtime_s");
  out << '\n';
  for (const auto& rec : r.records) {
    first = true;
    for (double p : rec.params) col(format_double(p));
    for (double v : rec.outputs) col(format_double(v));
    col(rec.flag);
    if (r.record_runtime) col(format_double(rec.runtime_s));
    out << '\n';
  }
}

nlohmann::json sidecar_json(const SweepResult& r) {
  nlohmann::json j;
  j["sweep_id"] = r.sweep_id;
  j["axes"] = nlohmann::json::array();
  for (const auto& a : r.axes) j["axes"].push_back({{"name", a.name}, {"values", a.values}});
  j["outputs"] = r.output_names;
  j["rows"] = r.records.size();
  std::size_t flagged = 0;
  for (const auto& rec : r.records) flagged += rec.flag.empty() ? 0 : 1;
  j["flagged_rows"] = flagged;
  j["metadata"] = r.metadata;
  return j;
}

std::filesystem::path write_sweep(const SweepResult& r, const std::filesystem::path& dir,
                                  const nlohmann::json& config_snapshot) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto csv = dir / (r.sweep_id + ".csv");
  const auto meta = dir / (r.sweep_id + ".json");
  {
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw InputError("cannot write " + csv.string());
    write_csv(r, f);
  }
  nlohmann::json j = sidecar_json(r);
  if (!config_snapshot.is_null()) j["config"] = config_snapshot;
  std::ofstream f(meta, std::ios::binary);
  if (!f) throw InputError("cannot write " + meta.string());
  f << j.dump(2) << '\n';
  return csv;
}

}  // namespace satd
