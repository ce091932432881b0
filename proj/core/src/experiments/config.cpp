#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ebcm/experiments.hpp"
#include "ebcm/message.hpp"

namespace ebcm::experiments {

namespace {

struct Entry {
  Experiment e;
  std::string_view name;
  std::string_view description;
};

constexpr std::array<Entry, 10> kEntries{{
    {Experiment::indivisibility, "indivisibility", "single source, beam splitter, two detectors; counts coincidences"},
    {Experiment::interface, "interface", "reflectivity of a dielectric interface vs angle of incidence"},
    {Experiment::plate, "plate", "plane-parallel plate reflectivity vs angle or optical thickness"},
    {Experiment::two_beam, "two_beam", "two-slit interference on a semicircle of 181 detectors"},
    {Experiment::mzi, "mzi", "Mach-Zehnder interferometer vs time-of-flight difference"},
    {Experiment::wheeler, "wheeler", "delayed-choice interferometer with a random EOM switch"},
    {Experiment::eraser, "eraser", "quantum eraser: MZI with wave plates and an analyzer"},
    {Experiment::tunneling, "tunneling", "frustrated total internal reflection vs gap width"},
    {Experiment::eprb, "eprb", "two-station polarization correlation with time tags"},
    {Experiment::hbt, "hbt", "two-source intensity correlation vs detector position"},
}};

constexpr double kInf = 1e300;

ParamSpec real_param(std::string key, std::string def, double lo, double hi, std::string help, bool lo_open = false,
                     bool hi_open = false) {
  ParamSpec p{std::move(key), ParamKind::real, std::move(def), lo, hi, lo_open, hi_open, {}, std::move(help)};
  return p;
}

ParamSpec positive(std::string key, std::string def, std::string help) {
  return real_param(std::move(key), std::move(def), 0.0, kInf, std::move(help), true);
}

ParamSpec list_param(std::string key, std::string def, double lo, double hi, std::string help) {
  ParamSpec p{std::move(key), ParamKind::list, std::move(def), lo, hi, false, false, {}, std::move(help)};
  return p;
}

ParamSpec choice_param(std::string key, std::string def, std::vector<std::string> choices, std::string help) {
  ParamSpec p{std::move(key), ParamKind::choice, std::move(def), 0, 0, false, false, std::move(choices), std::move(help)};
  return p;
}

ParamSpec flag_param(std::string key, std::string def, std::string help) {
  ParamSpec p{std::move(key), ParamKind::flag, std::move(def), 0, 0, false, false, {}, std::move(help)};
  return p;
}

const ParamSpec* find_spec(const std::vector<ParamSpec>& v, std::string_view key) {
  for (const auto& p : v)
    if (p.key == key)
      return &p;
  return nullptr;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(std::string_view t) {
  const std::string s = trim(t);
  if (s == "pi")
    return kPi;
  if (s == "inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last)
    throw ConfigError("not a number: '" + s + "'");
  return v;
}

void check_range(const ParamSpec& p, double v) {
  const bool below = p.min_open ? !(v > p.min) : !(v >= p.min);
  const bool above = p.max_open ? !(v < p.max) : !(v <= p.max);
  if (below || above) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.12g out of range %c%.12g, %.12g%c", p.key.c_str(), v, p.min_open ? '(' : '[',
                  p.min, p.max, p.max_open ? ')' : ']');
    throw ConfigError(buf);
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

} // namespace

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> v = [] {
    std::vector<Experiment> out;
    for (const auto& e : kEntries)
      out.push_back(e.e);
    return out;
  }();
  return v;
}

std::string_view name(Experiment e) {
  for (const auto& x : kEntries)
    if (x.e == e)
      return x.name;
  return "unknown";
}

std::string_view describe(Experiment e) {
  for (const auto& x : kEntries)
    if (x.e == e)
      return x.description;
  return "";
}

std::optional<Experiment> parse_experiment(std::string_view s) {
  for (const auto& x : kEntries)
    if (x.name == s)
      return x.e;
  return std::nullopt;
}

double parse_real(std::string_view text) {
  // product/quotient of plain numbers and "pi", left to right
  const std::string s = trim(text);
  if (s.empty())
    throw ConfigError("empty value");
  double sign = 1.0;
  std::string_view body = s;
  if (body.front() == '-') {
    sign = -1.0;
    body.remove_prefix(1);
  }
  double acc = 0.0;
  char op = '*';
  bool first = true;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t next = body.find_first_of("*/", pos);
    const std::string_view tok = body.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    const double v = parse_number(tok);
    if (first) {
      acc = v;
      first = false;
    } else if (op == '*') {
      acc *= v;
    } else {
      if (v == 0.0)
        throw ConfigError("division by zero in '" + s + "'");
      acc /= v;
    }
    if (next == std::string_view::npos)
      break;
    op = body[next];
    pos = next + 1;
  }
  return sign * acc;
}

std::vector<double> parse_list(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty())
    throw ConfigError("empty list");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos || s.find(':', b + 1) != std::string::npos)
      throw ConfigError("range must read start:stop:count, got '" + s + "'");
    const double lo = parse_real(std::string_view(s).substr(0, a));
    const double hi = parse_real(std::string_view(s).substr(a + 1, b - a - 1));
    const double n = parse_real(std::string_view(s).substr(b + 1));
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e7)
      throw ConfigError("range count must be a positive integer, got '" + s + "'");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
  }
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(parse_real(std::string_view(s).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return out;
}

const std::vector<ParamSpec>& common_schema() {
  static const std::vector<ParamSpec> v{
      {"seed", ParamKind::integer, "42", 0, 1.8446744073709552e19, false, false, {}, "64-bit RNG seed"},
      {"events", ParamKind::integer, "10000", 1, 1e12, false, false, {}, "events per sweep point"},
      real_param("gamma", "0.99", 0.0, 1.0, "learning parameter of the optical units", false, true),
      real_param("gamma_hat", "0.99", 0.0, 1.0, "learning parameter of the detectors", false, true),
      {"ports", ParamKind::integer, "1", 1, 100000, false, false, {}, "detector input ports N_p"},
      {"threads", ParamKind::integer, "1", 1, 1024, false, false, {}, "worker threads for sweep points"},
      flag_param("reset_detectors", "true", "fresh detectors at every sweep point"),
  };
  return v;
}

const std::vector<ParamSpec>& parameter_schema(Experiment e) {
  static const std::map<Experiment, std::vector<ParamSpec>> schemas{
      {Experiment::indivisibility,
       {choice_param("source", "coherent", {"coherent", "random"}, "fixed or uniformly random polarization"),
        real_param("xi", "pi/4", -2 * kPi, 2 * kPi, "polarization angle of the coherent source")}},
      {Experiment::interface,
       {positive("n1", "1", "index of the incidence medium"), positive("n2", "1.52", "index of the second medium"),
        list_param("xi", "0, pi/4, pi/2", -2 * kPi, 2 * kPi, "polarization angles (0 = S, pi/2 = P)"),
        list_param("theta", "0:pi/2:19", 0.0, kPi / 2, "angles of incidence")}},
      {Experiment::plate,
       {positive("n1", "1", "index above the plate"), positive("n2", "3", "plate index"),
        positive("n3", "1.5", "index below the plate"),
        list_param("xi", "0", -2 * kPi, 2 * kPi, "polarization angles"),
        list_param("theta", "0", 0.0, kPi / 2, "angles of incidence"),
        list_param("thickness", "0:1:21", 0.0, 1e6, "optical thickness n2*h in wavelengths")}},
      {Experiment::two_beam,
       {positive("a", "1", "slit width (c/f)"), positive("d", "5", "slit separation (c/f)"),
        positive("X", "100", "screen radius (c/f)"), real_param("xi", "0", -2 * kPi, 2 * kPi, "polarization angle")}},
      {Experiment::mzi,
       {list_param("xi", "0, pi/4, pi/2", -2 * kPi, 2 * kPi, "polarization angles"),
        list_param("f_dt", "0:1:21", 0.0, 1e3, "time-of-flight difference f*dT"),
        positive("arm_time", "10", "time of flight of arm 0 (1/f)")}},
      {Experiment::wheeler,
       {real_param("xi", "pi/4", -2 * kPi, 2 * kPi, "source polarization"),
        list_param("f_dt", "0:1:21", 0.0, 1e3, "time-of-flight difference f*dT"),
        real_param("eom_angle", "pi/8", -kPi, kPi, "EOM optic-axis angle when r_n = 1"),
        positive("arm_time", "10", "time of flight of arm 0 (1/f)")}},
      {Experiment::eraser,
       {real_param("theta0", "pi/3", -kPi, kPi, "HWP0 angle in arm 0"),
        real_param("theta1", "pi/4", -kPi, kPi, "analysis HWP1 angle"),
        real_param("theta2", "pi/8", -kPi, kPi, "analysis QWP angle"),
        list_param("f_dt", "0:1:21", 0.0, 1e3, "time-of-flight difference f*dT"),
        positive("arm_time", "10", "time of flight of arm 0 (1/f)")}},
      {Experiment::tunneling,
       {positive("n", "1.52", "prism index"),
        real_param("theta", "pi/4", 0.0, kPi / 2, "internal angle of incidence", false, true),
        list_param("xi", "0, pi/4, pi/2", -2 * kPi, 2 * kPi, "polarization angles"),
        list_param("w", "0:5:26", 0.0, 1e3, "gap width (c/f)")}},
      {Experiment::eprb,
       {choice_param("state", "singlet", {"singlet", "product"}, "source type"),
        list_param("alpha1", "0:pi:13", -2 * kPi, 2 * kPi, "station 1 EOM settings, drawn per event"),
        list_param("alpha2", "0", -2 * kPi, 2 * kPi, "station 2 EOM settings, drawn per event"),
        real_param("eta1", "0", -2 * kPi, 2 * kPi, "product-state angle of particle 1"),
        real_param("eta2", "pi/2", -2 * kPi, 2 * kPi, "product-state angle of particle 2"),
        positive("t_eprb", "1000", "time-tag scale (1/f)"), real_param("d", "4", 0.0, 64.0, "time-tag exponent"),
        positive("window", "1", "coincidence window W (1/f) for the analysis output")}},
      {Experiment::hbt,
       {positive("X", "100000", "source-to-detector distance (c/f)"),
        positive("d", "2000", "source separation (c/f)"),
        {"refresh", ParamKind::integer, "40", 1, 1e9, false, false, {}, "pairs per random phase setting N_F"},
        list_param("y1", "-50:50:21", -1e9, 1e9, "position of detector D1 (c/f)"),
        real_param("xi", "0", -2 * kPi, 2 * kPi, "polarization angle"),
        flag_param("delay", "false", "detector time-delay mode"), positive("window", "2", "coincidence window (1/f)"),
        positive("t_max", "2000", "delay scale (1/f)"), real_param("h", "8", 0.0, 64.0, "delay exponent")}},
  };
  return schemas.at(e);
}

ExperimentConfig::ExperimentConfig(Experiment e) : experiment_(e) {
  for (const auto& p : parameter_schema(e))
    set(p.key, p.default_text);
}

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const std::string text = trim(raw);
  if (const auto* p = find_spec(common_schema(), key)) {
    if (key == "seed") {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("seed must be an unsigned 64-bit integer, got '" + text + "'");
      seed = v;
      return;
    }
    if (p->kind == ParamKind::flag) {
      if (text != "true" && text != "false")
        throw ConfigError(std::string(key) + " must be true or false");
      reset_detectors = text == "true";
      return;
    }
    const double v = parse_real(text);
    check_range(*p, v);
    if (p->kind == ParamKind::integer && v != std::floor(v))
      throw ConfigError(std::string(key) + " must be an integer");
    if (key == "events")
      events_per_point = static_cast<std::uint64_t>(v);
    else if (key == "gamma")
      gamma = v;
    else if (key == "gamma_hat")
      gamma_hat = v;
    else if (key == "ports")
      ports = static_cast<int>(v);
    else if (key == "threads")
      threads = static_cast<int>(v);
    return;
  }
  const auto* p = find_spec(parameter_schema(experiment_), key);
  if (!p)
    throw ConfigError("unknown key '" + std::string(key) + "' for experiment " + std::string(name(experiment_)));
  Value v{text, {}};
  switch (p->kind) {
  case ParamKind::real:
  case ParamKind::integer: {
    const double x = parse_real(text);
    check_range(*p, x);
    if (p->kind == ParamKind::integer && x != std::floor(x))
      throw ConfigError(std::string(key) + " must be an integer");
    v.numbers = {x};
    break;
  }
  case ParamKind::list:
    v.numbers = parse_list(text);
    for (double x : v.numbers)
      check_range(*p, x);
    break;
  case ParamKind::choice:
    if (std::find(p->choices.begin(), p->choices.end(), text) == p->choices.end())
      throw ConfigError("invalid value '" + text + "' for " + std::string(key));
    break;
  case ParamKind::flag:
    if (text != "true" && text != "false")
      throw ConfigError(std::string(key) + " must be true or false");
    break;
  }
  values_.insert_or_assign(std::string(key), std::move(v));
}

const ExperimentConfig::Value& ExperimentConfig::value(std::string_view key, ParamKind kind) const {
  const auto it = values_.find(key);
  const auto* p = find_spec(parameter_schema(experiment_), key);
  if (it == values_.end() || !p)
    throw std::out_of_range("no parameter '" + std::string(key) + "' for experiment " + std::string(name(experiment_)));
  const bool numeric = kind == ParamKind::real && p->kind == ParamKind::integer;
  if (p->kind != kind && !numeric)
    throw std::logic_error("parameter '" + std::string(key) + "' read with the wrong kind");
  return it->second;
}

double ExperimentConfig::real(std::string_view key) const { return value(key, ParamKind::real).numbers.front(); }

const std::vector<double>& ExperimentConfig::list(std::string_view key) const {
  return value(key, ParamKind::list).numbers;
}

const std::string& ExperimentConfig::choice(std::string_view key) const { return value(key, ParamKind::choice).text; }

bool ExperimentConfig::flag(std::string_view key) const { return value(key, ParamKind::flag).text == "true"; }

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out{
      {"seed", std::to_string(seed)},
      {"events", std::to_string(events_per_point)},
      {"gamma", format_number(gamma)},
      {"gamma_hat", format_number(gamma_hat)},
      {"ports", std::to_string(ports)},
      {"threads", std::to_string(threads)},
      {"reset_detectors", reset_detectors ? "true" : "false"},
  };
  for (const auto& p : parameter_schema(experiment_))
    out.emplace_back(p.key, values_.find(p.key)->second.text);
  return out;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c(e);
  switch (e) {
  case Experiment::two_beam:
    c.ports = 500;
    break;
  case Experiment::wheeler:
    c.events_per_point = 2600;
    break;
  case Experiment::eprb:
    c.events_per_point = 300000;
    break;
  case Experiment::hbt:
    c.ports = 2;
    c.events_per_point = 200000;
    break;
  default:
    break;
  }
  return c;
}

} // namespace ebcm::experiments
