#pragma once
#include <filesystem>
#include <string_view>

#include "ebcm/experiments.hpp"

namespace ebcm::cli {

/// Parses the `[experiment]` + `key = value` format. `#` starts a comment.
/// Unlisted keys take the experiment defaults. Errors are ConfigError with
/// the offending line number.
experiments::ExperimentConfig parse_config_text(std::string_view text);

/// Reads and parses a config file. A missing file is a ConfigError.
experiments::ExperimentConfig parse_config_file(const std::filesystem::path& path);

} // namespace ebcm::cli
