#include "network.hpp"

#include <algorithm>

namespace ebcm::experiments {

double SweepPoint::fraction0() const {
  const auto n = clicks[0] + clicks[1];
  return n ? static_cast<double>(clicks[0]) / static_cast<double>(n) : 0.0;
}

double SweepPoint::fraction1() const {
  const auto n = clicks[0] + clicks[1];
  return n ? static_cast<double>(clicks[1]) / static_cast<double>(n) : 0.0;
}

} // namespace ebcm::experiments

namespace ebcm::experiments::detail {

void EventLoop::launch(std::uint64_t n) {
  if (in_flight_ != 0)
    throw std::logic_error("scheduler violation: emission while a messenger is still in flight");
  in_flight_ = n;
  emitted_ += n;
}

void EventLoop::absorb() {
  if (in_flight_ == 0)
    throw std::logic_error("scheduler violation: absorption with no messenger in flight");
  --in_flight_;
  ++absorbed_;
}

void EventLoop::audit() const {
  if (in_flight_ != 0 || emitted_ != absorbed_)
    throw std::logic_error("conservation audit failed: emitted " + std::to_string(emitted_) + ", absorbed " +
                           std::to_string(absorbed_));
}

std::vector<DetectorUnit> make_detectors(const ExperimentConfig& cfg, std::size_t count, double half_arc,
                                         std::optional<DelayModel> delay) {
  std::vector<DetectorUnit> dets;
  dets.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    dets.emplace_back(PortMapper{cfg.ports, half_arc}, cfg.gamma_hat, delay);
  return dets;
}

bool detect(SweepPoint& p, std::vector<DetectorUnit>& dets, std::size_t k, const Message& msg, double tof, Rng& rng,
            EventLoop& loop) {
  loop.absorb();
  ++p.arrivals[k];
  const bool click = dets[k].process(msg, 0.0, tof, rng).click;
  if (click)
    ++p.clicks[k];
  return click;
}

} // namespace ebcm::experiments::detail
