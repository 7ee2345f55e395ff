#pragma once

// One experiment = one op applied to a config, producing CSV rows. The CLI
// subcommands and `run` both end up here.

#include <string>
#include <vector>

#include "bloch/config.hpp"
#include "bloch/report.hpp"

namespace bloch {

struct ExperimentOutcome {
  std::vector<CsvRow> rows;
  unsigned flags = 0;     // union of the flags of every row
  std::string summary;    // a few human-readable lines for stdout
};

/// Ops understood by run_experiment, in the order the CLI lists them.
const std::vector<std::string>& experiment_ops();

/// Runs cfg.op. Bad or missing parameters, and parameter combinations the
/// operators reject, come back as ConfigError. Writes the SVG for level-set
/// (to cfg.svg_path, which must then be set) but never the CSV.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// 2 when DIVERGENT or NO_PLATEAU is set, else 0.
int exit_code_for(unsigned flags);

}  // namespace bloch
