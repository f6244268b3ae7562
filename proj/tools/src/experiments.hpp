#pragma once

#include <iosfwd>

#include "csv_output.hpp"
#include "run_config.hpp"

namespace emcel::cli {

/// Run the configured experiment. Warnings (time rounding, replaced zero
/// errors) go to `warn`.
CsvTable run_experiment(const RunConfig& cfg, std::ostream& warn);

}  // namespace emcel::cli
