#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "compresslab/simulator.hpp"

namespace compresslab {

// Numbers in CSV files use 9 significant digits; non-finite values are
// written as "nan" in CSV and null in JSON.
std::string format_number(double value);
nlohmann::json json_number(double value);

// step,i,count,density,ratio,theory_ratio
void write_run_csv(std::ostream& out, const RunReport& report);
nlohmann::json run_to_json(const RunReport& report);
nlohmann::json config_to_json(const SimConfig& config);

// Wall-clock time lives here only, so the report files themselves stay
// byte-identical between runs.
struct RunManifest {
  std::string command;
  nlohmann::json parameters;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

// Serializes with two-space indentation and a trailing newline.
std::string dump_json(const nlohmann::json& value);

}  // namespace compresslab
