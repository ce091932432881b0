#include <cmath>

#include "ebcm/experiments.hpp"
#include "ebcm/optics.hpp"
#include "ebcm/source.hpp"
#include "network.hpp"

namespace ebcm::experiments {

using detail::detect;
using detail::EventLoop;

IndivisibilityResult run_indivisibility(const ExperimentConfig& cfg) {
  const bool random_pol = cfg.choice("source") == "random";
  const double xi = cfg.real("xi");
  Rng rng(point_seed(cfg.seed, 0));
  auto bs = make_bs_unit(cfg.gamma);
  auto dets = detail::make_detectors(cfg, 2, 0.5 * kPi);
  EventLoop loop;
  SweepPoint p;
  IndivisibilityResult r;
  for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
    loop.launch();
    const auto msg = Message::polarized(random_pol ? uniform(rng, 0.0, 2.0 * kPi) : xi);
    const auto out = bs.process(0, msg, rng);
    std::array<bool, 2> fired{};
    fired[out.port] = detect(p, dets, static_cast<std::size_t>(out.port), out.msg, 0.0, rng, loop);
    if (fired[0] && fired[1])
      ++r.coincidences;
  }
  loop.audit();
  r.emitted = loop.emitted();
  r.reflected = p.clicks[0];
  r.transmitted = p.clicks[1];
  return r;
}

SweepResult run_mzi(const ExperimentConfig& cfg) {
  const auto& xis = cfg.list("xi");
  const auto& grid = cfg.list("f_dt");
  const double t0 = cfg.real("arm_time");
  SweepResult res{"f_dt", {}, {}, {}};
  res.points = detail::run_points(cfg, xis.size() * grid.size(), 2,
                                  [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
                                    SweepPoint p;
                                    p.xi = xis[i / grid.size()];
                                    p.value = grid[i % grid.size()];
                                    const std::array<double, 2> arm{t0, t0 - p.value};
                                    if (arm[1] < 0.0)
                                      throw std::domain_error("f_dt exceeds the arm time of flight");
                                    auto bs1 = make_bs_unit(cfg.gamma);
                                    auto bs2 = make_bs_unit(cfg.gamma);
                                    const auto msg = Message::polarized(p.xi);
                                    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
                                      loop.launch();
                                      const auto a = bs1.process(0, msg, rng);
                                      auto m = propagate(a.msg, arm[a.port]);
                                      m = optics::mirror_apply(m, {1.0, 0.0}, {-1.0, 0.0}).msg;
                                      const auto b = bs2.process(a.port, m, rng);
                                      detect(p, dets, static_cast<std::size_t>(b.port), b.msg, arm[a.port], rng, loop);
                                    }
                                    p.emitted = loop.emitted();
                                    return p;
                                  });
  return res;
}

SweepResult run_wheeler(const ExperimentConfig& cfg) {
  const auto& grid = cfg.list("f_dt");
  const double xi = cfg.real("xi");
  const double eom = cfg.real("eom_angle");
  const double t0 = cfg.real("arm_time");
  std::vector<std::vector<EventRecord>> records(grid.size());
  std::vector<std::array<SweepPoint, 2>> split(grid.size());
  detail::run_points(cfg, grid.size(), 2, [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
    const double f_dt = grid[i];
    const std::array<double, 2> arm{t0, t0 - f_dt};
    if (arm[1] < 0.0)
      throw std::domain_error("f_dt exceeds the arm time of flight");
    for (int r = 0; r < 2; ++r)
      split[i][r] = SweepPoint{xi, f_dt, r, 0, {}, {}, 0};
    auto pbs1 = make_pbs_unit(cfg.gamma);
    auto pbs2 = make_pbs_unit(cfg.gamma);
    auto pbs3 = make_pbs_unit(cfg.gamma);
    const auto msg = Message::polarized(xi);
    auto& rec = records[i];
    rec.reserve(cfg.events_per_point);
    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
      loop.launch();
      const auto a = pbs1.process(0, msg, rng);
      // The switch is thrown after the messenger has passed the first PBS.
      const int r = uniform01(rng) < 0.5 ? 0 : 1;
      const auto m = propagate(a.msg, arm[a.port]);
      const auto b = pbs2.process(a.port, m, rng);
      const auto e = optics::waveplate_apply(optics::Waveplate::half, r ? eom : 0.0, b.msg);
      const auto c = pbs3.process(0, e, rng);
      auto& s = split[i][r];
      ++s.emitted;
      if (detect(s, dets, static_cast<std::size_t>(c.port), c.msg, arm[a.port], rng, loop))
        rec.push_back({n, 0, c.port, arm[a.port], static_cast<double>(r), f_dt});
    }
    return SweepPoint{};
  });
  SweepResult res{"f_dt", {}, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    res.points.push_back(split[i][0]);
    res.points.push_back(split[i][1]);
    res.records.insert(res.records.end(), records[i].begin(), records[i].end());
  }
  return res;
}

SweepResult run_eraser(const ExperimentConfig& cfg) {
  const auto& grid = cfg.list("f_dt");
  const double th0 = cfg.real("theta0");
  const double th1 = cfg.real("theta1");
  const double th2 = cfg.real("theta2");
  const double t0 = cfg.real("arm_time");
  SweepResult res{"f_dt", {}, {}, {}};
  res.points = detail::run_points(cfg, grid.size(), 3,
                                  [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
                                    SweepPoint p;
                                    p.value = grid[i];
                                    const std::array<double, 2> arm{t0, t0 - p.value};
                                    if (arm[1] < 0.0)
                                      throw std::domain_error("f_dt exceeds the arm time of flight");
                                    auto bs1 = make_bs_unit(cfg.gamma);
                                    auto bs2 = make_bs_unit(cfg.gamma);
                                    auto analyzer = make_pbs_unit(cfg.gamma);
                                    const auto msg = Message::polarized(0.0);
                                    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
                                      loop.launch();
                                      const auto a = bs1.process(0, msg, rng);
                                      auto m = a.msg;
                                      if (a.port == 0)
                                        m = optics::waveplate_apply(optics::Waveplate::half, th0, m);
                                      m = propagate(m, arm[a.port]);
                                      const auto b = bs2.process(a.port, m, rng);
                                      if (b.port == 0) {
                                        detect(p, dets, 2, b.msg, arm[a.port], rng, loop);
                                        continue;
                                      }
                                      auto q = optics::waveplate_apply(optics::Waveplate::quarter, th2, b.msg);
                                      q = optics::waveplate_apply(optics::Waveplate::half, th1, q);
                                      const auto c = analyzer.process(0, q, rng);
                                      // P output of the analyzer is D0, S output D1.
                                      detect(p, dets, c.port == 1 ? 0 : 1, c.msg, arm[a.port], rng, loop);
                                    }
                                    p.emitted = loop.emitted();
                                    return p;
                                  });
  return res;
}

} // namespace ebcm::experiments
