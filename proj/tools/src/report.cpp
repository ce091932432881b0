#include "ebcm/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>

#include "ebcm/analysis.hpp"
#include "ebcm/oracles.hpp"
#include "ebcm/random.hpp"

#ifndef EBCM_VERSION
#define EBCM_VERSION "0.0.0"
#endif

namespace ebcm::cli {

using namespace experiments;
using nlohmann::json;

const char* version() { return EBCM_VERSION; }

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

/// One compared quantity of a sweep experiment.
struct Channel {
  std::string name;
  std::function<double(const SweepPoint&)> sim;
  std::function<double(const SweepPoint&)> oracle;
  std::function<double(const SweepPoint&)> trials; ///< binomial denominator of `sim`
};

double two_detector_total(const SweepPoint& p) { return static_cast<double>(p.clicks[0] + p.clicks[1]); }
double emitted(const SweepPoint& p) { return static_cast<double>(p.emitted); }

struct SweepLayout {
  std::string sweep_name;
  std::string aux_name; ///< empty if none
  bool tagged = false;
  int detectors = 2;
  std::vector<SweepPoint> skeleton; ///< xi / value / tag / aux in run order
  std::vector<Channel> channels;
};

SweepLayout layout(const ExperimentConfig& cfg) {
  SweepLayout l;
  switch (cfg.experiment()) {
  case Experiment::interface: {
    const double n1 = cfg.real("n1"), n2 = cfg.real("n2");
    l.sweep_name = "theta";
    for (double xi : cfg.list("xi"))
      for (double t : cfg.list("theta"))
        l.skeleton.push_back({xi, t});
    l.channels.push_back({"reflectivity", [](const SweepPoint& p) { return p.fraction0(); },
                          [=](const SweepPoint& p) { return oracles::fresnel_oracle(p.value, n1, n2, p.xi); },
                          two_detector_total});
    break;
  }
  case Experiment::plate: {
    const double n1 = cfg.real("n1"), n2 = cfg.real("n2"), n3 = cfg.real("n3");
    const auto& thetas = cfg.list("theta");
    const auto& thick = cfg.list("thickness");
    const bool by_thickness = thick.size() > 1 || thetas.size() == 1;
    l.sweep_name = by_thickness ? "thickness" : "theta";
    l.aux_name = by_thickness ? "theta" : "thickness";
    for (double xi : cfg.list("xi"))
      for (double t : thetas)
        for (double h : thick) {
          SweepPoint p{xi, by_thickness ? h : t};
          p.aux = by_thickness ? t : h;
          l.skeleton.push_back(p);
        }
    l.channels.push_back({"reflectance", [](const SweepPoint& p) { return p.fraction0(); },
                          [=](const SweepPoint& p) {
                            const double theta = by_thickness ? p.aux : p.value;
                            const double h = by_thickness ? p.value : p.aux;
                            return oracles::plate_oracle(theta, n1, n2, n3, h, p.xi);
                          },
                          two_detector_total});
    break;
  }
  case Experiment::mzi:
    l.sweep_name = "f_dt";
    for (double xi : cfg.list("xi"))
      for (double v : cfg.list("f_dt"))
        l.skeleton.push_back({xi, v});
    l.channels.push_back({"d0", [](const SweepPoint& p) { return p.fraction0(); },
                          [](const SweepPoint& p) { return oracles::mzi_oracle(kTwoPi * p.value, 0.0).p0; },
                          two_detector_total});
    break;
  case Experiment::wheeler: {
    const double xi = cfg.real("xi"), eom = cfg.real("eom_angle");
    l.sweep_name = "f_dt";
    l.tagged = true;
    for (double v : cfg.list("f_dt"))
      for (int r = 0; r < 2; ++r)
        l.skeleton.push_back({xi, v, r});
    l.channels.push_back({"d0", [](const SweepPoint& p) { return p.fraction0(); },
                          [=](const SweepPoint& p) {
                            return oracles::wheeler_oracle(p.xi, p.tag ? eom : 0.0, kTwoPi * p.value);
                          },
                          two_detector_total});
    break;
  }
  case Experiment::eraser: {
    const double t0 = cfg.real("theta0"), t1 = cfg.real("theta1"), t2 = cfg.real("theta2");
    l.sweep_name = "f_dt";
    l.detectors = 3;
    for (double v : cfg.list("f_dt"))
      l.skeleton.push_back({0.0, v});
    auto oracle = [=](const SweepPoint& p) { return oracles::eraser_oracle(t0, t1, t2, kTwoPi * p.value); };
    l.channels.push_back({"i0", [](const SweepPoint& p) { return static_cast<double>(p.clicks[0]) / emitted(p); },
                          [=](const SweepPoint& p) { return oracle(p).p0; }, emitted});
    l.channels.push_back({"i1", [](const SweepPoint& p) { return static_cast<double>(p.clicks[1]) / emitted(p); },
                          [=](const SweepPoint& p) { return oracle(p).p1; }, emitted});
    l.channels.push_back({"d0_normalized", [](const SweepPoint& p) { return p.fraction0(); },
                          [=](const SweepPoint& p) {
                            const auto o = oracle(p);
                            return o.p0 / (o.p0 + o.p1);
                          },
                          two_detector_total});
    break;
  }
  case Experiment::tunneling: {
    const double n = cfg.real("n"), theta = cfg.real("theta");
    l.sweep_name = "w";
    for (double xi : cfg.list("xi"))
      for (double w : cfg.list("w"))
        l.skeleton.push_back({xi, w});
    l.channels.push_back({"transmissivity", [](const SweepPoint& p) { return p.fraction0(); },
                          [=](const SweepPoint& p) { return oracles::ftir_oracle(p.value, n, theta, p.xi); },
                          two_detector_total});
    break;
  }
  default:
    throw std::logic_error("not a sweep experiment");
  }
  return l;
}

std::vector<std::string> key_header(const SweepLayout& l) {
  std::vector<std::string> h{"xi"};
  if (l.tagged)
    h.push_back("tag");
  h.push_back(l.sweep_name);
  if (!l.aux_name.empty())
    h.push_back(l.aux_name);
  return h;
}

std::vector<std::string> key_cells(const SweepLayout& l, const SweepPoint& p) {
  std::vector<std::string> r{cell(p.xi)};
  if (l.tagged)
    r.push_back(cell(p.tag));
  r.push_back(cell(p.value));
  if (!l.aux_name.empty())
    r.push_back(cell(p.aux));
  return r;
}

Table sweep_oracle(const SweepLayout& l) {
  Table t{key_header(l), {}};
  for (const auto& c : l.channels)
    t.header.push_back(c.name);
  for (const auto& p : l.skeleton) {
    auto row = key_cells(l, p);
    for (const auto& c : l.channels)
      row.push_back(cell(c.oracle(p)));
    t.add(std::move(row));
  }
  return t;
}

std::string group_key(const SweepLayout& l, const SweepPoint& p) {
  std::string k = "xi=" + cell(p.xi);
  if (l.tagged)
    k += ",tag=" + cell(p.tag);
  return k;
}

Report sweep_report(const ExperimentConfig& cfg, const SweepResult& res) {
  const auto l = layout(cfg);
  Report rep;
  Table sim{key_header(l), {}};
  sim.header.push_back("emitted");
  for (const char* what : {"arrivals", "clicks"})
    for (int k = 0; k < l.detectors; ++k)
      sim.header.push_back(std::string(what) + "_d" + std::to_string(k));
  for (const char* h : {"multi_clicks", "fraction_d0", "fraction_d1"})
    sim.header.push_back(h);

  Table ana{key_header(l), {}};
  for (const auto& c : l.channels)
    for (const char* s : {"_sim", "_oracle", "_deviation", "_z"})
      ana.header.push_back(c.name + s);

  // Accumulated squared deviations per (channel, xi/tag group).
  std::map<std::string, std::pair<double, std::size_t>> rms;
  std::map<std::string, double> worst;
  rep.point_totals = json::array();
  for (const auto& p : res.points) {
    auto row = key_cells(l, p);
    row.push_back(cell(p.emitted));
    for (int k = 0; k < l.detectors; ++k)
      row.push_back(cell(p.arrivals[k]));
    for (int k = 0; k < l.detectors; ++k)
      row.push_back(cell(p.clicks[k]));
    row.push_back(cell(p.multi_clicks));
    const bool any = p.clicks[0] + p.clicks[1] > 0;
    row.push_back(any ? cell(p.fraction0()) : kUndefined);
    row.push_back(any ? cell(p.fraction1()) : kUndefined);
    sim.add(std::move(row));

    auto arow = key_cells(l, p);
    for (const auto& c : l.channels) {
      const double n = c.trials(p);
      if (n == 0.0) {
        for (int i = 0; i < 4; ++i)
          arow.push_back(kUndefined);
        continue;
      }
      const double s = c.sim(p), o = c.oracle(p);
      const std::array<double, 1> sv{s}, ov{o}, nv{n};
      const auto cmp = analysis::compare_to_oracle(sv, ov, nv);
      arow.push_back(cell(s));
      arow.push_back(cell(o));
      arow.push_back(cell(s - o));
      arow.push_back(cell(cmp.z_scores[0]));
      const auto key = c.name + "[" + group_key(l, p) + "]";
      rms[key].first += (s - o) * (s - o);
      ++rms[key].second;
      worst[key] = std::max(worst[key], std::abs(s - o));
    }
    ana.add(std::move(arow));

    json pt = {{"xi", p.xi}, {l.sweep_name, p.value}, {"emitted", p.emitted}};
    if (l.tagged)
      pt["tag"] = p.tag;
    if (!l.aux_name.empty())
      pt[l.aux_name] = p.aux;
    pt["clicks"] = std::vector<std::uint64_t>(p.clicks.begin(), p.clicks.begin() + l.detectors);
    rep.point_totals.push_back(pt);
  }
  for (const auto& [key, acc] : rms)
    rep.summary[key] = {{"rms", std::sqrt(acc.first / static_cast<double>(acc.second))},
                        {"max_abs_deviation", worst[key]}};

  rep.files.emplace_back("simulation.csv", std::move(sim));
  rep.files.emplace_back("oracle.csv", sweep_oracle(l));
  rep.files.emplace_back("analysis.csv", std::move(ana));
  if (!res.records.empty()) {
    std::map<int, Table> stations;
    for (const auto& r : res.records) {
      auto& t = stations[r.station];
      if (t.header.empty())
        t.header = {"event_index", "outcome", "time_tag", "setting", "sweep_value"};
      t.add({cell(r.event_index), cell(r.outcome), cell(r.time_tag), cell(r.setting), cell(r.sweep_value)});
    }
    for (auto& [s, t] : stations)
      rep.files.emplace_back("events_station" + std::to_string(s) + ".csv", std::move(t));
  }
  return rep;
}

Report indivisibility_report(const ExperimentConfig& cfg) {
  const auto r = run_indivisibility(cfg);
  Report rep;
  Table sim{{"emitted", "clicks_d0", "clicks_d1", "coincidences"}, {}};
  sim.add({cell(r.emitted), cell(r.reflected), cell(r.transmitted), cell(r.coincidences)});
  const double clicks = static_cast<double>(r.reflected + r.transmitted);
  Table ana{{"quantity", "sim", "oracle"}, {}};
  ana.add({"fraction_d0", clicks > 0 ? cell(static_cast<double>(r.reflected) / clicks) : kUndefined, cell(0.5)});
  ana.add({"click_efficiency", cell(clicks / static_cast<double>(r.emitted)), cell(1.0)});
  ana.add({"coincidences", cell(r.coincidences), cell(0)});
  rep.summary = {{"coincidences", r.coincidences}, {"click_efficiency", clicks / static_cast<double>(r.emitted)}};
  rep.point_totals = json::array({{{"emitted", r.emitted}, {"clicks", {r.reflected, r.transmitted}}}});
  rep.files.emplace_back("simulation.csv", std::move(sim));
  rep.files.emplace_back("oracle.csv", oracle_table(cfg));
  rep.files.emplace_back("analysis.csv", std::move(ana));
  return rep;
}

Report two_beam_report(const ExperimentConfig& cfg) {
  const auto r = run_two_beam(cfg);
  const double a = cfg.real("a"), d = cfg.real("d");
  Report rep;
  Table sim{{"detector", "theta", "arrivals", "clicks"}, {}};
  std::vector<double> counts;
  std::uint64_t clicks = 0;
  for (std::size_t j = 0; j < r.theta.size(); ++j) {
    sim.add({cell(static_cast<int>(j)), cell(r.theta[j]), cell(r.arrivals[j]), cell(r.clicks[j])});
    counts.push_back(static_cast<double>(r.clicks[j]));
    clicks += r.clicks[j];
  }
  const auto fit = analysis::fit_two_slit(r.theta, counts, a, d);
  Table ana{{"detector", "theta", "clicks", "fit", "oracle_scaled"}, {}};
  std::vector<double> nominal;
  for (double t : r.theta)
    nominal.push_back(oracles::two_beam_oracle(t, a, d));
  const double scale = analysis::fit_scale(counts, nominal);
  for (std::size_t j = 0; j < r.theta.size(); ++j)
    ana.add({cell(static_cast<int>(j)), cell(r.theta[j]), cell(r.clicks[j]),
             cell(fit.amplitude * oracles::two_beam_oracle(r.theta[j], fit.width, fit.separation)),
             cell(scale * nominal[j])});
  const double ratio = static_cast<double>(clicks) / static_cast<double>(r.emitted);
  rep.summary = {{"fit_amplitude", fit.amplitude},
                 {"fit_width", fit.width},
                 {"fit_separation", fit.separation},
                 {"fit_rms", fit.rms},
                 {"period_relative_error", std::abs(fit.separation - d) / d},
                 {"clicks_per_emission", ratio}};
  rep.point_totals = json::array({{{"emitted", r.emitted}, {"clicks", clicks}}});
  rep.files.emplace_back("simulation.csv", std::move(sim));
  rep.files.emplace_back("oracle.csv", oracle_table(cfg));
  rep.files.emplace_back("analysis.csv", std::move(ana));
  return rep;
}

oracles::PairState pair_state(const ExperimentConfig& cfg) {
  return cfg.choice("state") == "singlet" ? oracles::PairState::singlet : oracles::PairState::product;
}

Report eprb_report(const ExperimentConfig& cfg) {
  const auto r = run_eprb(cfg);
  const auto state = pair_state(cfg);
  const double eta1 = cfg.real("eta1"), eta2 = cfg.real("eta2");
  Report rep;

  Table sim{{"alpha1", "alpha2", "pairs", "plus_1", "minus_1", "none_1", "plus_2", "minus_2", "none_2"}, {}};
  std::map<std::pair<double, double>, std::array<std::uint64_t, 7>> singles;
  for (std::size_t n = 0; n < r.station1.size(); ++n) {
    auto& s = singles[{r.station1[n].setting, r.station2[n].setting}];
    ++s[0];
    ++s[1 + (r.station1[n].outcome > 0 ? 0 : r.station1[n].outcome < 0 ? 1 : 2)];
    ++s[4 + (r.station2[n].outcome > 0 ? 0 : r.station2[n].outcome < 0 ? 1 : 2)];
  }
  rep.point_totals = json::array();
  for (const auto& [key, s] : singles) {
    std::vector<std::string> row{cell(key.first), cell(key.second)};
    for (auto v : s)
      row.push_back(cell(v));
    sim.add(std::move(row));
    rep.point_totals.push_back({{"alpha1", key.first}, {"alpha2", key.second}, {"pairs", s[0]}});
  }

  Table ana{{"alpha1", "alpha2", "theta", "window", "pairs", "c_pp", "c_pm", "c_mp", "c_mm", "e1", "e2", "e12", "rho12",
             "e12_oracle"},
            {}};
  std::vector<double> windows{cfg.real("window"), cfg.real("t_eprb"), analysis::kNoWindow};
  for (double w : windows) {
    std::vector<double> thetas, e12s, basis;
    double worst_e12 = 0.0, worst_rho = 0.0;
    for (const auto& t : analysis::count_coincidences(r.station1, r.station2, w)) {
      const double theta = t.alpha1 - t.alpha2;
      const auto o = oracles::eprb_oracle(state, t.alpha1, t.alpha2, eta1, eta2);
      std::vector<std::string> row{cell(t.alpha1), cell(t.alpha2), cell(theta), cell(w),     cell(t.pairs),
                                   cell(t.c_pp),   cell(t.c_pm),   cell(t.c_mp), cell(t.c_mm)};
      if (t.total() == 0) {
        for (int i = 0; i < 4; ++i)
          row.push_back(kUndefined);
      } else {
        const auto avg = analysis::single_particle_averages(t);
        const auto c = analysis::correlation(t);
        for (double v : {avg.e1, avg.e2, c.e12, c.rho12})
          row.push_back(cell(v));
        thetas.push_back(theta);
        e12s.push_back(c.e12);
        basis.push_back(-std::cos(2.0 * theta));
        worst_e12 = std::max(worst_e12, std::abs(c.e12 - o.e12));
        worst_rho = std::max(worst_rho, std::abs(c.rho12 - o.rho12));
      }
      row.push_back(cell(o.e12));
      ana.add(std::move(row));
    }
    json s = {{"max_abs_deviation_e12", worst_e12}, {"max_abs_deviation_rho12", worst_rho}};
    if (!e12s.empty() && state == oracles::PairState::singlet)
      s["fitted_amplitude"] = analysis::fit_scale(e12s, basis);
    rep.summary["window=" + cell(w)] = s;
  }

  rep.files.emplace_back("simulation.csv", std::move(sim));
  rep.files.emplace_back("oracle.csv", oracle_table(cfg));
  rep.files.emplace_back("analysis.csv", std::move(ana));
  for (int s = 1; s <= 2; ++s) {
    Table t{{"event_index", "outcome", "time_tag", "setting", "sweep_value"}, {}};
    for (const auto& e : s == 1 ? r.station1 : r.station2)
      t.add({cell(e.event_index), cell(e.outcome), cell(e.time_tag), cell(e.setting), cell(e.sweep_value)});
    rep.files.emplace_back("events_station" + std::to_string(s) + ".csv", std::move(t));
  }
  return rep;
}

Report hbt_report(const ExperimentConfig& cfg) {
  const auto r = run_hbt(cfg);
  Report rep;
  Table sim{{"y1", "f_dt", "pairs", "arrivals_d0", "arrivals_d1", "singles_d0", "singles_d1", "coincidences"}, {}};
  std::vector<double> x, co, s0, s1;
  rep.point_totals = json::array();
  for (const auto& p : r.points) {
    sim.add({cell(p.y1), cell(p.f_dt), cell(p.pairs), cell(p.arrivals[0]), cell(p.arrivals[1]), cell(p.singles[0]),
             cell(p.singles[1]), cell(p.coincidences)});
    x.push_back(p.f_dt);
    co.push_back(static_cast<double>(p.coincidences));
    s0.push_back(static_cast<double>(p.singles[0]));
    s1.push_back(static_cast<double>(p.singles[1]));
    rep.point_totals.push_back({{"y1", p.y1}, {"pairs", p.pairs}, {"coincidences", p.coincidences}});
  }
  const auto fc = analysis::fit_cosine(x, co);
  const auto f0 = analysis::fit_cosine(x, s0);
  const auto f1 = analysis::fit_cosine(x, s1);
  Table ana{{"y1", "f_dt", "coincidences", "coincidence_fit", "coincidences_oracle"}, {}};
  for (const auto& p : r.points)
    ana.add({cell(p.y1), cell(p.f_dt), cell(p.coincidences), cell(fc.a * (1.0 + fc.b * std::cos(kTwoPi * p.f_dt))),
             cell(oracles::hbt_oracle(p.f_dt, static_cast<double>(p.pairs)).coincidences)});
  rep.summary = {{"coincidence_fit", {{"a", fc.a}, {"b", fc.b}, {"rms", fc.rms}}},
                 {"singles_d0_fit", {{"a", f0.a}, {"b", f0.b}}},
                 {"singles_d1_fit", {{"a", f1.a}, {"b", f1.b}}},
                 {"visibility", std::abs(fc.b)},
                 {"delay_mode", r.delay_mode}};
  rep.files.emplace_back("simulation.csv", std::move(sim));
  rep.files.emplace_back("oracle.csv", oracle_table(cfg));
  rep.files.emplace_back("analysis.csv", std::move(ana));
  return rep;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

Table oracle_table(const ExperimentConfig& cfg) {
  switch (cfg.experiment()) {
  case Experiment::indivisibility: {
    Table t{{"fraction_d0", "fraction_d1", "coincidences"}, {}};
    t.add({cell(0.5), cell(0.5), cell(0)});
    return t;
  }
  case Experiment::two_beam: {
    const double a = cfg.real("a"), d = cfg.real("d");
    Table t{{"detector", "theta", "intensity"}, {}};
    for (int j = 0; j < 181; ++j) {
      const double theta = (j - 90) * kTwoPi / 360.0;
      t.add({cell(j), cell(theta), cell(oracles::two_beam_oracle(theta, a, d))});
    }
    return t;
  }
  case Experiment::eprb: {
    const auto state = pair_state(cfg);
    Table t{{"alpha1", "alpha2", "theta", "e1", "e2", "e12", "rho12"}, {}};
    for (double a1 : cfg.list("alpha1"))
      for (double a2 : cfg.list("alpha2")) {
        const auto o = oracles::eprb_oracle(state, a1, a2, cfg.real("eta1"), cfg.real("eta2"));
        t.add({cell(a1), cell(a2), cell(a1 - a2), cell(o.e1), cell(o.e2), cell(o.e12), cell(o.rho12)});
      }
    return t;
  }
  case Experiment::hbt: {
    const double X = cfg.real("X"), d = cfg.real("d");
    const auto n = static_cast<double>(cfg.events_per_point);
    Table t{{"y1", "f_dt", "singles", "coincidences"}, {}};
    for (double y : cfg.list("y1")) {
      const double f_dt = hbt_delta_t(X, d, y);
      const auto o = oracles::hbt_oracle(f_dt, n);
      t.add({cell(y), cell(f_dt), cell(o.singles), cell(o.coincidences)});
    }
    return t;
  }
  default:
    return sweep_oracle(layout(cfg));
  }
}

Report simulate(const ExperimentConfig& cfg) {
  switch (cfg.experiment()) {
  case Experiment::indivisibility:
    return indivisibility_report(cfg);
  case Experiment::interface:
    return sweep_report(cfg, run_interface(cfg));
  case Experiment::plate:
    return sweep_report(cfg, run_plate(cfg));
  case Experiment::two_beam:
    return two_beam_report(cfg);
  case Experiment::mzi:
    return sweep_report(cfg, run_mzi(cfg));
  case Experiment::wheeler:
    return sweep_report(cfg, run_wheeler(cfg));
  case Experiment::eraser:
    return sweep_report(cfg, run_eraser(cfg));
  case Experiment::tunneling:
    return sweep_report(cfg, run_tunneling(cfg));
  case Experiment::eprb:
    return eprb_report(cfg);
  case Experiment::hbt:
    return hbt_report(cfg);
  }
  throw std::logic_error("unhandled experiment");
}

json run(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  json manifest;
  manifest["experiment"] = std::string(name(cfg.experiment()));
  manifest["version"] = version();
  manifest["rng"] = kRngAlgorithm;
  manifest["seed"] = cfg.seed;
  json echo = json::object();
  for (const auto& [k, v] : cfg.echo())
    echo[k] = v;
  manifest["config"] = echo;
  manifest["started"] = utc_now();
  auto rep = simulate(cfg);
  manifest["finished"] = utc_now();

  std::filesystem::create_directories(out_dir);
  json outputs = json::array();
  for (const auto& [file, table] : rep.files) {
    const auto path = out_dir / file;
    write_csv(path, table);
    outputs.push_back(path.string());
  }
  const auto manifest_path = out_dir / "manifest.json";
  outputs.push_back(manifest_path.string());
  manifest["outputs"] = outputs;
  manifest["point_totals"] = rep.point_totals;
  manifest["summary"] = rep.summary;
  std::ofstream os(manifest_path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open " + manifest_path.string() + " for writing");
  os << manifest.dump(2) << '\n';
  return manifest;
}

} // namespace ebcm::cli
