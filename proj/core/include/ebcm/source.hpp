#pragma once
#include <array>
#include <cstddef>
#include <cstdint>

#include "ebcm/message.hpp"
#include "ebcm/random.hpp"

namespace ebcm {

enum class SourceKind {
  coherent,                     ///< identical message every emission
  random_phase_pair,            ///< two sources, random phases held for N_F pairs
  opposite_random_polarization, ///< pair with angles (xi, xi + pi/2), xi uniform
  fixed_product_polarization,   ///< pair with fixed angles (eta1, eta2)
  slit_pair,                    ///< uniform over two slits, uniform launch angle
};

struct SourceSpec {
  SourceKind kind = SourceKind::coherent;
  double xi = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  double slit_width = 1.0;      ///< a
  double slit_separation = 5.0; ///< d, centre to centre
  double eta1 = 0.0;
  double eta2 = kPi / 2.0;
  int refresh_period = 40;      ///< N_F
  std::array<Vec2, 2> positions{}; ///< pair source locations
};

/// One emission: a single messenger or a simultaneous pair.
struct Emission {
  std::array<Messenger, 2> messengers{};
  std::array<double, 2> xi{}; ///< polarization angle of each member
  std::size_t count = 1;
};

class Source {
public:
  explicit Source(SourceSpec spec);

  Emission emit(Rng& rng);

  const SourceSpec& spec() const noexcept { return spec_; }
  std::uint64_t emitted() const noexcept { return emitted_; }
  /// Current pair phases (random_phase_pair only).
  std::array<double, 2> phases() const noexcept { return phases_; }

private:
  SourceSpec spec_;
  std::uint64_t emitted_ = 0;
  std::array<double, 2> phases_{};
};

struct SlitHit {
  double theta; ///< angular position on the screen
  double tof;   ///< path length from the slit point (c = 1)
};

/// Where a ray launched from (0, y) at angle beta meets the circle of radius X.
SlitHit slit_hit_geometry(double y, double beta, double X);

} // namespace ebcm
