#include <cmath>

#include "ebcm/experiments.hpp"
#include "ebcm/optics.hpp"
#include "ebcm/source.hpp"
#include "network.hpp"

namespace ebcm::experiments {

using detail::EventLoop;

namespace {

/// EOM + PBS + two detectors of one EPRB station.
struct Station {
  InterfaceUnit pbs;
  std::vector<DetectorUnit> dets;

  /// Returns +1 / -1 for the detector that fired, 0 if neither fired.
  int observe(const Message& msg, double alpha, Rng& rng, EventLoop& loop) {
    // The EOM is a half-wave plate at alpha/2: it maps polarization xi to alpha - xi.
    const auto rotated = optics::waveplate_apply(optics::Waveplate::half, 0.5 * alpha, msg);
    const auto out = pbs.process(0, rotated, rng);
    loop.absorb();
    const bool click = dets[static_cast<std::size_t>(out.port)].process(out.msg, 0.0, 0.0, rng).click;
    if (!click)
      return 0;
    return out.port == 0 ? 1 : -1;
  }
};

} // namespace

EprbResult run_eprb(const ExperimentConfig& cfg) {
  const auto& grid1 = cfg.list("alpha1");
  const auto& grid2 = cfg.list("alpha2");
  const double t_eprb = cfg.real("t_eprb");
  const double d = cfg.real("d");
  SourceSpec spec;
  spec.kind = cfg.choice("state") == "singlet" ? SourceKind::opposite_random_polarization
                                                 : SourceKind::fixed_product_polarization;
  spec.eta1 = cfg.real("eta1");
  spec.eta2 = cfg.real("eta2");
  Source source(spec);
  std::array<Station, 2> st{Station{make_pbs_unit(cfg.gamma), detail::make_detectors(cfg, 2, 0.5 * kPi)},
                            Station{make_pbs_unit(cfg.gamma), detail::make_detectors(cfg, 2, 0.5 * kPi)}};
  Rng rng(point_seed(cfg.seed, 0));
  EventLoop loop;
  EprbResult r;
  r.station1.reserve(cfg.events_per_point);
  r.station2.reserve(cfg.events_per_point);
  for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
    // Settings are chosen before and independently of the emission.
    const std::array<double, 2> alpha{grid1[uniform_index(rng, grid1.size())], grid2[uniform_index(rng, grid2.size())]};
    const auto e = source.emit(rng);
    loop.launch(2);
    for (int i = 0; i < 2; ++i) {
      const int x = st[i].observe(e.messengers[i].msg, alpha[i], rng, loop);
      const double scale = t_eprb * std::pow(std::abs(std::sin(2.0 * (e.xi[i] - alpha[i]))), d);
      const double tag = uniform01(rng) * scale;
      (i == 0 ? r.station1 : r.station2).push_back({n, i + 1, x, tag, alpha[i], 0.0});
    }
  }
  loop.audit();
  return r;
}

double hbt_delta_t(double X, double d, double y1) {
  auto T = [&](int src, double y) { return std::hypot(X, (1 - 2 * src) * 0.5 * d - y); };
  return (T(0, 0.0) - T(1, 0.0)) - (T(0, y1) - T(1, y1));
}

HbtResult run_hbt(const ExperimentConfig& cfg) {
  const double X = cfg.real("X");
  const double d = cfg.real("d");
  const auto& ys = cfg.list("y1");
  const bool delay = cfg.flag("delay");
  const double window = cfg.real("window");
  const std::optional<DelayModel> model =
      delay ? std::optional<DelayModel>(DelayModel{cfg.real("t_max"), cfg.real("h")}) : std::nullopt;
  const double half_arc = 2.0 * std::atan(0.5 * d / X);

  HbtResult res;
  res.delay_mode = delay;
  res.points.resize(ys.size());
  auto body = [&](std::size_t i, std::vector<DetectorUnit>& dets) {
    HbtPoint& p = res.points[i];
    p.y1 = ys[i];
    p.f_dt = hbt_delta_t(X, d, p.y1);
    SourceSpec spec;
    spec.kind = SourceKind::random_phase_pair;
    spec.xi = cfg.real("xi");
    spec.refresh_period = static_cast<int>(cfg.real("refresh"));
    spec.positions = {Vec2{0.0, 0.5 * d}, Vec2{0.0, -0.5 * d}};
    Source source(spec);
    const std::array<Vec2, 2> det_pos{Vec2{X, 0.0}, Vec2{X, p.y1}};
    Rng rng(point_seed(cfg.seed, i));
    EventLoop loop;
    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
      const auto e = source.emit(rng);
      loop.launch(2);
      std::array<std::optional<double>, 2> fired{};
      for (int k = 0; k < 2; ++k) {
        const auto& m = e.messengers[k];
        const int target = uniform01(rng) < 0.5 ? 0 : 1;
        const Vec2 path = det_pos[target] - m.position;
        const double tof = path.norm();
        // Incidence relative to the direction from the source midpoint.
        const double incidence = path.angle() - det_pos[target].angle();
        loop.absorb();
        ++p.arrivals[target];
        const auto hit = dets[target].process(propagate(m.msg, tof), incidence, tof, rng);
        if (hit.click) {
          ++p.singles[target];
          if (!fired[target])
            fired[target] = *hit.click_time;
        }
      }
      if (fired[0] && fired[1] && (!delay || window - std::abs(*fired[0] - *fired[1]) >= 0.0))
        ++p.coincidences;
    }
    loop.audit();
    p.pairs = cfg.events_per_point;
  };

  if (cfg.reset_detectors) {
    detail::for_each_point(ys.size(), cfg.threads, [&](std::size_t i) {
      auto dets = detail::make_detectors(cfg, 2, half_arc, model);
      body(i, dets);
    });
  } else {
    auto dets = detail::make_detectors(cfg, 2, half_arc, model);
    for (std::size_t i = 0; i < ys.size(); ++i)
      body(i, dets);
  }
  return res;
}

} // namespace ebcm::experiments
