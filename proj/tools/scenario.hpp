#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgt/error.hpp"

namespace lgt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitNumerical = 4;

/// Invalid configuration; `field` is the dotted path of the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& msg)
      : Error(field.empty() ? msg : field + ": " + msg), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Scenario failed a numerical validation (Hermiticity, gauge invariance,
/// equivalence); the report is still written.
class ValidationFailure : public Error {
 public:
  using Error::Error;
};

struct CsvFile {
  std::string name;
  std::string body;
};

struct ScenarioResult {
  nlohmann::json resolved;  ///< config with every default filled in
  nlohmann::json results;   ///< scenario-specific summary
  std::vector<CsvFile> files;
  bool passed = true;      ///< false => exit code 4 after writing
  std::string diagnostic;  ///< reason when !passed
};

const std::vector<std::string>& scenario_kinds();

/// Runs one scenario in memory. Throws ConfigError, CapacityError,
/// InvalidArgument or NumericalError.
ScenarioResult run_scenario(const std::string& kind, const nlohmann::json& config);

struct RunOptions {
  std::string kind;
  std::filesystem::path config;
  std::filesystem::path out;
  int threads = 1;
  bool verbose = false;
};

/// Parses the config file, runs the scenario and writes metadata.json plus
/// the CSV files into `out`. Nothing is written when the run fails before
/// producing a report. Returns the process exit code.
int run_to_directory(const RunOptions& options);

/// Command-line entry point.
int main_cli(int argc, char** argv);

}  // namespace lgt::cli
