#pragma once
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ebcm/cli/csv.hpp"
#include "ebcm/experiments.hpp"

namespace ebcm::cli {

/// Everything one run produces, before it touches the file system.
struct Report {
  std::vector<std::pair<std::string, Table>> files; ///< file name -> contents, in write order
  nlohmann::json summary;                            ///< fitted parameters and headline numbers
  nlohmann::json point_totals;                       ///< per sweep point event totals
};

/// Runs the experiment and builds simulation, oracle and analysis tables
/// (plus per-station event files for EPRB and Wheeler).
Report simulate(const experiments::ExperimentConfig& cfg);

/// Oracle curve only, on the configured sweep grid.
Table oracle_table(const experiments::ExperimentConfig& cfg);

/// simulate() + write every table and manifest.json under out_dir.
/// Returns the manifest.
nlohmann::json run(const experiments::ExperimentConfig& cfg, const std::filesystem::path& out_dir);

const char* version();

} // namespace ebcm::cli
