#pragma once
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ebcm/experiments.hpp"
#include "ebcm/random.hpp"
#include "ebcm/units.hpp"

namespace ebcm::experiments::detail {

/// Enforces one emission in flight at a time and audits conservation.
class EventLoop {
public:
  void launch(std::uint64_t n = 1);
  void absorb();
  void audit() const;

  std::uint64_t emitted() const noexcept { return emitted_; }
  std::uint64_t absorbed() const noexcept { return absorbed_; }

private:
  std::uint64_t emitted_ = 0;
  std::uint64_t absorbed_ = 0;
  std::uint64_t in_flight_ = 0;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any point is rethrown on the caller.
template <class Fn>
void for_each_point(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

std::vector<DetectorUnit> make_detectors(const ExperimentConfig& cfg, std::size_t count, double half_arc,
                                         std::optional<DelayModel> delay = std::nullopt);

/// Routes one messenger into detector k of a point and tallies it.
bool detect(SweepPoint& p, std::vector<DetectorUnit>& dets, std::size_t k, const Message& msg, double tof, Rng& rng,
            EventLoop& loop);

/// Sweep driver: fresh detectors per point (parallel) unless the config
/// keeps detector state, in which case points run in order on one bank.
template <class Body>
std::vector<SweepPoint> run_points(const ExperimentConfig& cfg, std::size_t n, std::size_t n_detectors, Body&& body) {
  std::vector<SweepPoint> out(n);
  if (cfg.reset_detectors) {
    for_each_point(n, cfg.threads, [&](std::size_t i) {
      Rng rng(point_seed(cfg.seed, i));
      auto dets = make_detectors(cfg, n_detectors, 0.5 * kPi);
      EventLoop loop;
      out[i] = body(i, rng, dets, loop);
      loop.audit();
    });
  } else {
    auto dets = make_detectors(cfg, n_detectors, 0.5 * kPi);
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng(point_seed(cfg.seed, i));
      EventLoop loop;
      out[i] = body(i, rng, dets, loop);
      loop.audit();
    }
  }
  return out;
}

} // namespace ebcm::experiments::detail
