#include "ebcm/message.hpp"

#include <cmath>
#include <stdexcept>

namespace ebcm {

Message Message::polarized(double xi, double psi1, double psi2) {
  return {std::polar(std::cos(xi), psi1), std::polar(std::sin(xi), psi2)};
}

Message Message::normalized() const {
  const double n = std::sqrt(norm2());
  if (!(n > 0.0))
    throw std::domain_error("cannot normalize a zero message");
  return {c1 / n, c2 / n};
}

double Vec2::norm() const noexcept { return std::hypot(x, y); }
double Vec2::angle() const noexcept { return std::atan2(y, x); }
Vec2 Vec2::from_angle(double a) noexcept { return {std::cos(a), std::sin(a)}; }

Message propagate(const Message& m, double dt) {
  if (dt < 0.0)
    throw std::domain_error("propagation time must be non-negative");
  // Reduce to one period first so large times of flight keep full precision.
  const double turns = dt - std::floor(dt);
  return m * std::polar(1.0, 2.0 * kPi * turns);
}

Messenger propagate(Messenger m, double dt, double speed) {
  m.msg = propagate(m.msg, dt);
  m.position = m.position + m.direction * (dt * speed);
  m.time_of_flight += dt;
  return m;
}

} // namespace ebcm
