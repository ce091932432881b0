#include "ebcm/source.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebcm {

Source::Source(SourceSpec spec) : spec_(spec) {
  if (spec_.kind == SourceKind::slit_pair && !(spec_.slit_width > 0.0 && spec_.slit_separation > 0.0))
    throw std::invalid_argument("slit width and separation must be positive");
  if (spec_.kind == SourceKind::random_phase_pair && spec_.refresh_period < 1)
    throw std::invalid_argument("phase refresh period must be at least 1");
}

Emission Source::emit(Rng& rng) {
  Emission e;
  const std::uint64_t n = emitted_++;
  auto& m0 = e.messengers[0];
  m0.emit_index = n;
  switch (spec_.kind) {
  case SourceKind::coherent:
    m0.msg = Message::polarized(spec_.xi, spec_.psi1, spec_.psi2);
    e.xi[0] = spec_.xi;
    break;
  case SourceKind::slit_pair: {
    const double half = 0.5 * spec_.slit_separation;
    const double centre = uniform01(rng) < 0.5 ? half : -half;
    const double y = centre + uniform(rng, -0.5, 0.5) * spec_.slit_width;
    const double beta = uniform(rng, -0.5 * kPi, 0.5 * kPi);
    m0.msg = Message::polarized(spec_.xi, spec_.psi1, spec_.psi2);
    m0.position = {0.0, y};
    m0.direction = Vec2::from_angle(beta);
    e.xi[0] = spec_.xi;
    break;
  }
  case SourceKind::random_phase_pair: {
    if (n % static_cast<std::uint64_t>(spec_.refresh_period) == 0) {
      phases_[0] = uniform(rng, 0.0, 2.0 * kPi);
      phases_[1] = uniform(rng, 0.0, 2.0 * kPi);
    }
    e.count = 2;
    for (int k = 0; k < 2; ++k) {
      auto& m = e.messengers[k];
      m.emit_index = n;
      m.source_id = k;
      m.position = spec_.positions[k];
      m.msg = Message::polarized(spec_.xi, spec_.psi1 + phases_[k], spec_.psi2 + phases_[k]);
      e.xi[k] = spec_.xi;
    }
    break;
  }
  case SourceKind::opposite_random_polarization:
  case SourceKind::fixed_product_polarization: {
    double a = spec_.eta1;
    double b = spec_.eta2;
    if (spec_.kind == SourceKind::opposite_random_polarization) {
      a = uniform(rng, 0.0, 2.0 * kPi);
      b = a + 0.5 * kPi;
    }
    e.count = 2;
    e.xi = {a, b};
    for (int k = 0; k < 2; ++k) {
      auto& m = e.messengers[k];
      m.emit_index = n;
      m.source_id = k;
      m.msg = Message::polarized(e.xi[k]);
      m.direction = k == 0 ? Vec2{-1.0, 0.0} : Vec2{1.0, 0.0};
    }
    break;
  }
  }
  return e;
}

SlitHit slit_hit_geometry(double y, double beta, double X) {
  if (!(X > 0.0) || !(std::abs(y) < X))
    throw std::domain_error("slit position must lie strictly inside the screen radius");
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  double s = (y * cb * cb + sb * std::sqrt(X * X - y * y * cb * cb)) / X;
  s = std::clamp(s, -1.0, 1.0);
  const double tof = std::sqrt(std::max(0.0, X * X - 2.0 * y * X * s + y * y));
  return {std::asin(s), tof};
}

} // namespace ebcm
