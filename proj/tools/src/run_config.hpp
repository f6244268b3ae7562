#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "emcel/models.hpp"
#include "emcel/monte_carlo.hpp"
#include "emcel/scale_factor.hpp"
#include "emcel/speed_measure.hpp"

namespace emcel::cli {

/// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what) : std::runtime_error(field + ": " + what) {}
};

enum class Experiment { Paths, ScaleFactorTable, Cdf, RateStudy, ConditionA };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  std::vector<double> points() const;
};

/// "2^-6..2^-10" (every power in between), "0.1,0.01" or a single number.
std::vector<double> parse_h_list(const std::string& text);
/// "lo:hi:count".
Grid parse_grid(const std::string& text);

struct RunConfig {
  Experiment experiment = Experiment::Paths;
  std::optional<ModelSpec> model;
  /// Custom speed measure; used when no catalog model is given.
  std::optional<SpeedMeasure> measure;
  std::optional<Strategy> strategy;
  double strategy_tol = 0.0;
  std::vector<double> h_list;
  double t = 1.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 1;
  std::optional<double> start;
  Payoff payoff = Payoff::indicator(0.1);
  std::optional<Grid> grid;
  std::optional<std::pair<double, double>> k_interval;
  int k_points = 200;
  bool folded = true;
  std::string output_path;
  bool timestamp = false;
  nlohmann::json document;  // canonical form echoed into output headers
};

/// Parse and validate a configuration document for one experiment.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Speed measure from its declarative description.
SpeedMeasure parse_measure(const nlohmann::json& doc, const std::string& field = "measure");

}  // namespace emcel::cli
