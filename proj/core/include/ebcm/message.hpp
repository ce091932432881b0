#pragma once
#include <complex>
#include <cstdint>

namespace ebcm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Two-component unit vector carried by a messenger. c1 is the component
/// perpendicular to the plane of incidence (S), c2 the parallel one (P).
struct Message {
  cplx c1{1.0, 0.0};
  cplx c2{0.0, 0.0};

  /// Linear polarization at angle xi from the S axis with phases psi1, psi2:
  /// (e^{i psi1} cos xi, e^{i psi2} sin xi).
  static Message polarized(double xi, double psi1 = 0.0, double psi2 = 0.0);

  double norm2() const noexcept { return std::norm(c1) + std::norm(c2); }
  Message normalized() const;
  Message operator*(cplx s) const noexcept { return {c1 * s, c2 * s}; }
  bool operator==(const Message&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const noexcept;
  double angle() const noexcept;
  Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
  double dot(Vec2 o) const noexcept { return x * o.x + y * o.y; }
  static Vec2 from_angle(double a) noexcept;
};

/// The only mobile entity of a simulation. Lengths are in units c/f and
/// times in units 1/f.
struct Messenger {
  Message msg;
  Vec2 position;
  Vec2 direction{1.0, 0.0};
  int source_id = 0;
  std::uint64_t emit_index = 0;
  double time_of_flight = 0.0;
};

/// Phase rotation of both components by e^{i 2 pi dt} (f = 1).
Message propagate(const Message& m, double dt);

/// Advance a messenger for time dt at speed v (units c): phase, position and
/// time-of-flight all move together.
Messenger propagate(Messenger m, double dt, double speed = 1.0);

} // namespace ebcm
