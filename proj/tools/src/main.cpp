#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebcm/cli/config_file.hpp"
#include "ebcm/cli/report.hpp"

namespace {

using ebcm::experiments::ConfigError;
using ebcm::experiments::ExperimentConfig;

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

struct Common {
  std::string experiment;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> events;
  std::optional<std::string> gamma;
  std::optional<std::string> gamma_hat;
  std::optional<int> threads;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--experiment,-e", c.experiment, "experiment name (see `ebcm list`)");
  cmd->add_option("--config,-c", c.config, "config file with one [experiment] section");
  cmd->add_option("--seed", c.seed, "RNG seed (overrides EBCM_SEED)");
  cmd->add_option("--events", c.events, "events per sweep point");
  cmd->add_option("--gamma", c.gamma, "DLM parameter of the processing units");
  cmd->add_option("--gamma-hat", c.gamma_hat, "DLM parameter of the detectors");
  cmd->add_option("--threads", c.threads, "worker threads for sweep points");
  cmd->allow_extras();
  cmd->footer("Any other experiment key can be given as --key value, e.g. --state product.");
}

/// Defaults < config file < EBCM_SEED < flags < --key value extras.
ExperimentConfig build_config(const Common& c, const std::vector<std::string>& extras) {
  std::optional<ExperimentConfig> cfg;
  if (!c.config.empty()) {
    cfg = ebcm::cli::parse_config_file(c.config);
    if (!c.experiment.empty() && c.experiment != ebcm::experiments::name(cfg->experiment()))
      throw ConfigError("--experiment " + c.experiment + " disagrees with the config file section");
  } else {
    if (c.experiment.empty())
      throw ConfigError("either --experiment or --config is required");
    const auto e = ebcm::experiments::parse_experiment(c.experiment);
    if (!e)
      throw ConfigError("unknown experiment '" + c.experiment + "'");
    cfg = ebcm::experiments::default_config(*e);
  }
  if (const char* env = std::getenv("EBCM_SEED"); env && *env)
    cfg->set("seed", env);
  if (c.seed)
    cfg->set("seed", std::to_string(*c.seed));
  if (c.events)
    cfg->set("events", std::to_string(*c.events));
  if (c.gamma)
    cfg->set("gamma", *c.gamma);
  if (c.gamma_hat)
    cfg->set("gamma_hat", *c.gamma_hat);
  if (c.threads)
    cfg->set("threads", std::to_string(*c.threads));
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0)
      throw ConfigError("unexpected argument '" + key + "'");
    key.erase(0, 2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else if (i + 1 < extras.size()) {
      value = extras[++i];
    } else {
      throw ConfigError("missing value for --" + key);
    }
    for (auto& ch : key)
      if (ch == '-')
        ch = '_';
    cfg->set(key, value);
  }
  return *cfg;
}

void list_experiments() {
  using namespace ebcm::experiments;
  const auto common = default_config(Experiment::mzi);
  std::cout << "common keys:\n";
  for (const auto& p : common_schema())
    std::cout << "  " << p.key << " (default " << p.default_text << ") " << p.help << '\n';
  for (auto e : all_experiments()) {
    std::cout << '\n' << name(e) << ": " << describe(e) << '\n';
    const auto cfg = default_config(e);
    const auto echo = cfg.echo();
    for (const auto& p : parameter_schema(e)) {
      std::string value;
      for (const auto& [k, v] : echo)
        if (k == p.key)
          value = v;
      std::cout << "  " << p.key << " = " << value;
      if (!p.help.empty())
        std::cout << "    # " << p.help;
      std::cout << '\n';
    }
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-by-event corpuscular simulation of quantum-optics experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ebcm::cli::version());

  Common run_opts, oracle_opts;
  auto* run = app.add_subcommand("run", "simulate and write simulation, oracle and analysis CSVs");
  add_common(run, run_opts);
  run->add_option("--out,-o", run_opts.out, "output directory")->default_val("out");
  auto* oracle = app.add_subcommand("oracle", "write the oracle curve only (stdout unless --out)");
  add_common(oracle, oracle_opts);
  oracle->add_option("--out,-o", oracle_opts.out, "output directory");
  app.add_subcommand("list", "list experiments and their default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (app.got_subcommand("list")) {
      list_experiments();
      return 0;
    }
    if (run->parsed()) {
      const auto cfg = build_config(run_opts, run->remaining());
      const auto manifest = ebcm::cli::run(cfg, run_opts.out);
      for (const auto& path : manifest["outputs"])
        std::cout << path.get<std::string>() << '\n';
      return 0;
    }
    const auto cfg = build_config(oracle_opts, oracle->remaining());
    const auto table = ebcm::cli::oracle_table(cfg);
    if (oracle_opts.out.empty()) {
      ebcm::cli::write_csv(std::cout, table);
    } else {
      std::filesystem::create_directories(oracle_opts.out);
      const auto path = std::filesystem::path(oracle_opts.out) / "oracle.csv";
      ebcm::cli::write_csv(path, table);
      std::cout << path.string() << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "run aborted: " << e.what() << '\n';
    return kRuntimeExit;
  }
}
