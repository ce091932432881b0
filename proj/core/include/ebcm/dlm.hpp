#pragma once
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ebcm {

/// Unit step with Θ(0) = 1. Used for every threshold decision in the library.
constexpr double step(double s) noexcept { return s >= 0.0 ? 1.0 : 0.0; }

} // namespace ebcm

namespace ebcm::dlm {

constexpr double kDefaultGamma = 0.99;

/// Scalar learning machine. Each update emits the bit that brings the
/// internal estimate closest to the input.
class ScalarDlm {
public:
  explicit ScalarDlm(double x0 = 0.5, double gamma = kDefaultGamma, bool fast_mode = false);

  /// Feed one input y in [0,1]; returns the emitted bit.
  int update(double y);

  double state() const noexcept { return x_; }
  double gamma() const noexcept { return gamma_; }
  bool fast_mode() const noexcept { return fast_; }

private:
  double x_;
  double gamma_;
  bool fast_;
};

/// Vector learning machine: x <- gamma*x + (1-gamma)*v.
class VectorDlm {
public:
  VectorDlm(std::vector<double> x0, double gamma = kDefaultGamma);

  /// Uniform start 1/d in every component.
  static VectorDlm uniform(std::size_t d, double gamma = kDefaultGamma);

  void update(std::span<const double> v);

  /// Update with the unit vector along axis k. Exact for sum-preserving use.
  void update_one_hot(std::size_t k);

  std::span<const double> state() const noexcept { return x_; }
  double operator[](std::size_t k) const noexcept { return x_[k]; }
  std::size_t dimension() const noexcept { return x_.size(); }
  double gamma() const noexcept { return gamma_; }

private:
  std::vector<double> x_;
  double gamma_;
};

using Drive = std::function<std::vector<double>(double)>;

/// Continuous-time limit of the vector machine, dx/dt = -rate*(x - v(t)),
/// solved as e^{-t*rate} x0 + rate * int_0^t e^{-u*rate} v(t-u) du with
/// composite Simpson quadrature on `panels` intervals.
std::vector<double> relax_ode(std::span<const double> x0, const Drive& v, double rate, double t,
                              int panels = 2000);

} // namespace ebcm::dlm
