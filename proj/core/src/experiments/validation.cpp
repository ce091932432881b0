#include <algorithm>
#include <cmath>

#include "ebcm/experiments.hpp"
#include "ebcm/optics.hpp"
#include "ebcm/source.hpp"
#include "network.hpp"

namespace ebcm::experiments {

using detail::detect;
using detail::EventLoop;

namespace {
constexpr std::uint64_t kPlateLoopCap = 10000;
constexpr int kScreenDetectors = 181;
} // namespace

SweepResult run_interface(const ExperimentConfig& cfg) {
  const auto& xis = cfg.list("xi");
  const auto& grid = cfg.list("theta");
  const double n1 = cfg.real("n1");
  const double n2 = cfg.real("n2");
  SweepResult res{"theta", {}, {}, {}};
  res.points = detail::run_points(cfg, xis.size() * grid.size(), 2,
                                  [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
                                    SweepPoint p;
                                    p.xi = xis[i / grid.size()];
                                    p.value = grid[i % grid.size()];
                                    auto unit = make_interface_unit(p.value, n1, n2, cfg.gamma);
                                    const auto msg = Message::polarized(p.xi);
                                    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
                                      loop.launch();
                                      const auto out = unit.process(0, msg, rng);
                                      detect(p, dets, static_cast<std::size_t>(out.port), out.msg, 0.0, rng, loop);
                                    }
                                    p.emitted = loop.emitted();
                                    return p;
                                  });
  return res;
}

SweepResult run_plate(const ExperimentConfig& cfg) {
  const auto& xis = cfg.list("xi");
  const auto& thetas = cfg.list("theta");
  const auto& thick = cfg.list("thickness");
  const double n1 = cfg.real("n1");
  const double n2 = cfg.real("n2");
  const double n3 = cfg.real("n3");
  SweepResult res{thick.size() > 1 || thetas.size() == 1 ? "thickness" : "theta", {}, {}, {}};
  res.aux_name = res.sweep_name == "thickness" ? "theta" : "thickness";
  const std::size_t per_xi = thetas.size() * thick.size();
  res.points = detail::run_points(
      cfg, xis.size() * per_xi, 2, [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
        SweepPoint p;
        p.xi = xis[i / per_xi];
        const double theta = thetas[(i % per_xi) / thick.size()];
        const double tau = thick[i % thick.size()];
        p.value = res.sweep_name == "theta" ? theta : tau;
        p.aux = res.sweep_name == "theta" ? tau : theta;
        const auto inner = optics::snell_refract(theta, n1, n2);
        auto top = make_interface_unit(theta, n1, n2, cfg.gamma);
        auto bottom = make_interface_unit(inner.theta2, n2, n3, cfg.gamma);
        const double leg = tau * std::cos(inner.theta2);
        const auto msg = Message::polarized(p.xi);
        for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
          loop.launch();
          double tof = 0.0;
          auto out = top.process(0, msg, rng);
          for (std::uint64_t bounce = 0;; ++bounce) {
            if (bounce >= kPlateLoopCap)
              throw std::runtime_error("plate: messenger exceeded the loop cap of 10000 passes");
            if (out.port == 0) {
              detect(p, dets, 0, out.msg, tof, rng, loop);
              break;
            }
            tof += leg;
            const auto down = bottom.process(0, propagate(out.msg, leg), rng);
            if (down.port == 1) {
              detect(p, dets, 1, down.msg, tof, rng, loop);
              break;
            }
            tof += leg;
            out = top.process(1, propagate(down.msg, leg), rng);
          }
        }
        p.emitted = loop.emitted();
        return p;
      });
  return res;
}

TwoBeamResult run_two_beam(const ExperimentConfig& cfg) {
  const double a = cfg.real("a");
  const double d = cfg.real("d");
  const double X = cfg.real("X");
  SourceSpec spec;
  spec.kind = SourceKind::slit_pair;
  spec.slit_width = a;
  spec.slit_separation = d;
  spec.xi = cfg.real("xi");
  Source source(spec);
  const double y_max = 0.5 * (d + a);
  if (!(y_max < X))
    throw std::domain_error("slits must lie inside the detector circle");
  const double half_arc = std::asin(y_max / X);
  auto dets = detail::make_detectors(cfg, kScreenDetectors, half_arc);

  TwoBeamResult r;
  r.arrivals.assign(kScreenDetectors, 0);
  r.clicks.assign(kScreenDetectors, 0);
  for (int j = 0; j < kScreenDetectors; ++j)
    r.theta.push_back((j - 90) * kPi / 180.0);

  Rng rng(point_seed(cfg.seed, 0));
  EventLoop loop;
  const std::uint64_t total = cfg.events_per_point * kScreenDetectors;
  for (std::uint64_t n = 0; n < total; ++n) {
    loop.launch();
    const auto e = source.emit(rng);
    const auto& m = e.messengers[0];
    const double beta = m.direction.angle();
    const auto hit = slit_hit_geometry(m.position.y, beta, X);
    const long j = std::clamp(std::lround(hit.theta * 180.0 / kPi) + 90, 0L, static_cast<long>(kScreenDetectors - 1));
    loop.absorb();
    ++r.arrivals[static_cast<std::size_t>(j)];
    const auto det = dets[static_cast<std::size_t>(j)].process(propagate(m.msg, hit.tof), beta - hit.theta, hit.tof, rng);
    if (det.click)
      ++r.clicks[static_cast<std::size_t>(j)];
  }
  loop.audit();
  r.emitted = loop.emitted();
  return r;
}

SweepResult run_tunneling(const ExperimentConfig& cfg) {
  const auto& xis = cfg.list("xi");
  const auto& grid = cfg.list("w");
  const double n_prism = cfg.real("n");
  const double theta = cfg.real("theta");
  SweepResult res{"w", {}, {}, {}};
  res.points = detail::run_points(cfg, xis.size() * grid.size(), 2,
                                  [&](std::size_t i, Rng& rng, std::vector<DetectorUnit>& dets, EventLoop& loop) {
                                    SweepPoint p;
                                    p.xi = xis[i / grid.size()];
                                    p.value = grid[i % grid.size()];
                                    auto gap = make_gap_unit(p.value, n_prism, theta, cfg.gamma);
                                    const auto msg = Message::polarized(p.xi);
                                    for (std::uint64_t n = 0; n < cfg.events_per_point; ++n) {
                                      loop.launch();
                                      const auto out = gap.process(0, msg, rng);
                                      // Transmitted light goes to D0, reflected light to D1.
                                      std::array<bool, 2> fired{};
                                      const std::size_t k = out.port == 1 ? 0 : 1;
                                      fired[k] = detect(p, dets, k, out.msg, 0.0, rng, loop);
                                      if (fired[0] && fired[1])
                                        ++p.multi_clicks;
                                    }
                                    p.emitted = loop.emitted();
                                    return p;
                                  });
  return res;
}

} // namespace ebcm::experiments
