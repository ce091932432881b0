#include "ebcm/dlm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebcm::dlm {

namespace {
void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::domain_error("learning parameter must lie in [0,1)");
}
} // namespace

ScalarDlm::ScalarDlm(double x0, double gamma, bool fast_mode) : x_(x0), gamma_(gamma), fast_(fast_mode) {
  check_gamma(gamma);
  if (!(x0 >= 0.0 && x0 <= 1.0))
    throw std::domain_error("scalar machine state must lie in [0,1]");
}

int ScalarDlm::update(double y) {
  if (!(y >= 0.0 && y <= 1.0))
    throw std::domain_error("scalar machine input must lie in [0,1]");
  const double g = fast_ ? std::min(1.0 - std::abs(x_ - y), gamma_) : gamma_;
  const double keep = g * x_;
  // Ties resolve to 0; that is the argmin over {0,1} with Θ(0) = 1.
  const int delta = std::abs(keep - y) <= std::abs(keep + (1.0 - g) - y) ? 0 : 1;
  x_ = std::clamp(keep + (1.0 - g) * delta, 0.0, 1.0);
  return delta;
}

VectorDlm::VectorDlm(std::vector<double> x0, double gamma) : x_(std::move(x0)), gamma_(gamma) {
  check_gamma(gamma);
  if (x_.empty())
    throw std::domain_error("vector machine needs at least one component");
}

VectorDlm VectorDlm::uniform(std::size_t d, double gamma) {
  if (d == 0)
    throw std::domain_error("vector machine needs at least one component");
  return VectorDlm(std::vector<double>(d, 1.0 / static_cast<double>(d)), gamma);
}

void VectorDlm::update(std::span<const double> v) {
  if (v.size() != x_.size())
    throw std::domain_error("input dimension does not match machine dimension");
  for (std::size_t i = 0; i < x_.size(); ++i)
    x_[i] = gamma_ * x_[i] + (1.0 - gamma_) * v[i];
}

void VectorDlm::update_one_hot(std::size_t k) {
  if (k >= x_.size())
    throw std::domain_error("one-hot index out of range");
  for (double& xi : x_)
    xi *= gamma_;
  x_[k] += 1.0 - gamma_;
}

std::vector<double> relax_ode(std::span<const double> x0, const Drive& v, double rate, double t, int panels) {
  if (!(rate > 0.0))
    throw std::domain_error("relaxation rate must be positive");
  if (t < 0.0)
    throw std::domain_error("time must be non-negative");
  std::vector<double> out(x0.begin(), x0.end());
  const double decay = std::exp(-t * rate);
  for (double& xi : out)
    xi *= decay;
  if (t == 0.0)
    return out;
  if (panels < 2)
    panels = 2;
  if (panels % 2)
    ++panels;
  const double h = t / panels;
  std::vector<double> acc(out.size(), 0.0);
  for (int k = 0; k <= panels; ++k) {
    const double u = k * h;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const auto vk = v(t - u);
    if (vk.size() != out.size())
      throw std::domain_error("drive dimension does not match state dimension");
    const double e = std::exp(-u * rate);
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += w * e * vk[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += rate * acc[i] * h / 3.0;
  return out;
}

} // namespace ebcm::dlm
