#include "ebcm/cli/config_file.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace ebcm::cli {

using experiments::ConfigError;
using experiments::ExperimentConfig;

namespace {
std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
} // namespace

ExperimentConfig parse_config_text(std::string_view text) {
  std::optional<ExperimentConfig> cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header", line_no);
      if (cfg)
        throw ConfigError("only one experiment section per file", line_no);
      const auto section = trim(line.substr(1, line.size() - 2));
      const auto e = experiments::parse_experiment(section);
      if (!e)
        throw ConfigError("unknown experiment '" + std::string(section) + "'", line_no);
      cfg = experiments::default_config(*e);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no);
    if (!cfg)
      throw ConfigError("key before any [experiment] section", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      cfg->set(key, value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), line_no);
    }
  }
  if (!cfg)
    throw ConfigError("no experiment section");
  return *cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace ebcm::cli
