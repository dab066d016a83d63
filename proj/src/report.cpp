#include "compresslab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "compresslab/version.hpp"

namespace compresslab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

nlohmann::json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

void write_run_csv(std::ostream& out, const RunReport& report) {
  out << "step,i,count,density,ratio,theory_ratio\n";
  for (const auto& row : report.rows) {
    out << row.step << ',' << row.i << ',' << row.count << ',' << format_number(row.density) << ','
        << format_number(row.ratio) << ',' << format_number(row.theory_ratio) << '\n';
  }
}

nlohmann::json config_to_json(const SimConfig& config) {
  return {{"length", config.length}, {"steps", config.steps},   {"mode", std::string(to_string(config.mode))},
          {"p", config.p},           {"r", config.r},           {"seed", config.seed},
          {"replicas", config.replicas}};
}

nlohmann::json run_to_json(const RunReport& report) {
  nlohmann::json j;
  j["manifest"] = {{"version", report.version}, {"config", config_to_json(report.config)}};
  j["ratio_defined"] = report.ratio_defined;
  j["max_rel_deviation"] = json_number(report.max_rel_deviation);
  j["compared_max"] = report.compared_max;
  auto& hists = j["histograms"] = nlohmann::json::array();
  for (const auto& h : report.histograms) {
    nlohmann::json counts = nlohmann::json::object();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      if (h.counts[i] != 0) counts[std::to_string(i)] = h.counts[i];
    }
    hists.push_back({{"step", h.step}, {"total_cells", h.total_cells}, {"mass", h.mass}, {"counts", counts}});
  }
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"step", row.step},
                    {"i", row.i},
                    {"count", row.count},
                    {"density", json_number(row.density)},
                    {"ratio", json_number(row.ratio)},
                    {"theory_ratio", json_number(row.theory_ratio)},
                    {"exact_ratio", json_number(row.exact_ratio)}});
  }
  return j;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
  return {{"command", manifest.command},
          {"version", kVersion},
          {"parameters", manifest.parameters},
          {"outputs", manifest.outputs},
          {"wall_clock_seconds", manifest.wall_clock_seconds}};
}

std::string dump_json(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace compresslab
