#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebcm/records.hpp"

namespace ebcm::experiments {

enum class Experiment { indivisibility, interface, plate, two_beam, mzi, wheeler, eraser, tunneling, eprb, hbt };

const std::vector<Experiment>& all_experiments();
std::string_view name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view s);
std::string_view describe(Experiment e);

/// Invalid configuration value or key. Carries the config-file line if known.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what, int line = 0);
  int line() const noexcept { return line_; }

private:
  int line_;
};

enum class ParamKind { real, integer, list, choice, flag };

struct ParamSpec {
  std::string key;
  ParamKind kind;
  std::string default_text;
  double min = -1e300;
  double max = 1e300;
  bool min_open = false; ///< min itself excluded
  bool max_open = false;
  std::vector<std::string> choices;
  std::string help;
};

/// Parameters shared by all experiments (seed, events, gamma, ...).
const std::vector<ParamSpec>& common_schema();
/// Experiment-specific parameters with their defaults.
const std::vector<ParamSpec>& parameter_schema(Experiment e);

/// Parses "0.5", "pi/4", "-3*pi/8", "1e-3".
double parse_real(std::string_view text);
/// Parses "a, b, c" or the inclusive linspace form "start:stop:count".
std::vector<double> parse_list(std::string_view text);

class ExperimentConfig {
public:
  explicit ExperimentConfig(Experiment e);

  Experiment experiment() const noexcept { return experiment_; }

  std::uint64_t seed = 42;
  std::uint64_t events_per_point = 10000;
  double gamma = 0.99;
  double gamma_hat = 0.99;
  int ports = 1;
  int threads = 1;
  bool reset_detectors = true;

  /// Validated assignment of any common or experiment key. Throws ConfigError.
  void set(std::string_view key, std::string_view value);

  double real(std::string_view key) const;
  const std::vector<double>& list(std::string_view key) const;
  const std::string& choice(std::string_view key) const;
  bool flag(std::string_view key) const;

  /// Every key with its current text, common keys first, in schema order.
  std::vector<std::pair<std::string, std::string>> echo() const;

private:
  struct Value {
    std::string text;
    std::vector<double> numbers;
  };
  const Value& value(std::string_view key, ParamKind kind) const;

  Experiment experiment_;
  std::map<std::string, Value, std::less<>> values_;
};

ExperimentConfig default_config(Experiment e);

/// One sweep point of a single-messenger experiment.
struct SweepPoint {
  double xi = 0.0;
  double value = 0.0; ///< sweep variable
  int tag = 0;        ///< sub-population label (Wheeler r_n)
  std::uint64_t emitted = 0;
  std::array<std::uint64_t, 3> arrivals{};
  std::array<std::uint64_t, 3> clicks{};
  std::uint64_t multi_clicks = 0; ///< emissions that made more than one detector fire
  double aux = 0.0;               ///< secondary sweep variable (plate thickness)

  /// D0 / (D0 + D1); the two-detector normalized intensity.
  double fraction0() const;
  double fraction1() const;
};

struct SweepResult {
  std::string sweep_name;
  std::vector<SweepPoint> points;
  std::vector<EventRecord> records; ///< Wheeler data set; empty elsewhere
  std::string aux_name;             ///< empty when there is no secondary variable
};

struct IndivisibilityResult {
  std::uint64_t emitted = 0;
  std::uint64_t reflected = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t coincidences = 0;
};

struct TwoBeamResult {
  std::vector<double> theta;
  std::vector<std::uint64_t> arrivals;
  std::vector<std::uint64_t> clicks;
  std::uint64_t emitted = 0;
};

struct EprbResult {
  std::vector<EventRecord> station1;
  std::vector<EventRecord> station2;
};

struct HbtPoint {
  double y1 = 0.0;
  double f_dt = 0.0;
  std::uint64_t pairs = 0;
  std::array<std::uint64_t, 2> arrivals{};
  std::array<std::uint64_t, 2> singles{};
  std::uint64_t coincidences = 0;
};

struct HbtResult {
  bool delay_mode = false;
  std::vector<HbtPoint> points;
};

IndivisibilityResult run_indivisibility(const ExperimentConfig& cfg);
SweepResult run_interface(const ExperimentConfig& cfg);
SweepResult run_plate(const ExperimentConfig& cfg);
TwoBeamResult run_two_beam(const ExperimentConfig& cfg);
SweepResult run_mzi(const ExperimentConfig& cfg);
SweepResult run_wheeler(const ExperimentConfig& cfg);
SweepResult run_eraser(const ExperimentConfig& cfg);
SweepResult run_tunneling(const ExperimentConfig& cfg);
EprbResult run_eprb(const ExperimentConfig& cfg);
HbtResult run_hbt(const ExperimentConfig& cfg);

/// Time difference (T00 - T10) - (T01 - T11) for D0 at (X, 0) and D1 at (X, y1).
double hbt_delta_t(double X, double d, double y1);

} // namespace ebcm::experiments
