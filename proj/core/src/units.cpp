#include "ebcm/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebcm {

namespace {
constexpr double kTiny = 1e-15;
}

InterfaceUnit::InterfaceUnit(const optics::Matrix4& t, double gamma) : t_(t), x_(dlm::VectorDlm::uniform(2, gamma)) {}

InterfaceUnit::Output InterfaceUnit::process(int port, const Message& msg, Rng& rng) {
  if (port != 0 && port != 1)
    throw std::domain_error("interface port must be 0 or 1");
  reg_[port] = msg;
  x_.update_one_hot(static_cast<std::size_t>(port));
  ++processed_;

  const double s0 = std::sqrt(x_[0]);
  const double s1 = std::sqrt(x_[1]);
  const std::array<cplx, 4> y{s0 * reg_[0].c1, s1 * reg_[1].c1, s0 * reg_[0].c2, s1 * reg_[1].c2};
  std::array<cplx, 4> z{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      z[i] += t_[i][j] * y[j];

  const double z1 = std::norm(z[1]) + std::norm(z[3]);
  const double z0 = std::norm(z[0]) + std::norm(z[2]);
  int out = static_cast<int>(step(z1 - uniform01(rng)));
  const double chosen = out == 1 ? z1 : z0;
  if (chosen < kTiny) {
    if ((out == 1 ? z0 : z1) < kTiny)
      return {0, reg_[port]};
    out = 1 - out;
  }
  return {out, Message{z[out], z[out + 2]}.normalized()};
}

InterfaceUnit make_interface_unit(double theta, double n1, double n2, double gamma) {
  return InterfaceUnit(optics::interface_matrix(optics::fresnel_energy_coefficients(theta, n1, n2)), gamma);
}

InterfaceUnit make_bs_unit(double gamma) { return InterfaceUnit(optics::beam_splitter_matrix(), gamma); }

InterfaceUnit make_pbs_unit(double gamma) { return InterfaceUnit(optics::polarizing_beam_splitter_matrix(), gamma); }

InterfaceUnit make_gap_unit(double w, double n, double theta, double gamma) {
  return InterfaceUnit(optics::interface_matrix(optics::gap_coefficients(w, n, theta)), gamma);
}

int PortMapper::port(double incidence) const {
  if (ports < 1 || !(half_arc > 0.0))
    throw std::domain_error("port mapper needs at least one port and a positive arc");
  const double slack = 1e-12 * half_arc;
  if (!(std::abs(incidence) <= half_arc + slack))
    throw std::domain_error("arrival direction outside the detector acceptance arc");
  const double u = (incidence + half_arc) / (2.0 * half_arc);
  const int k = static_cast<int>(u * ports);
  return std::clamp(k, 0, ports - 1);
}

DetectorUnit::DetectorUnit(PortMapper mapper, double gamma_hat, std::optional<DelayModel> delay)
    : mapper_(mapper), x_(dlm::VectorDlm::uniform(static_cast<std::size_t>(std::max(mapper.ports, 1)), gamma_hat)),
      reg_(static_cast<std::size_t>(std::max(mapper.ports, 1))), delay_(delay) {
  if (mapper.ports < 1)
    throw std::domain_error("detector needs at least one port");
}

DetectorUnit::Detection DetectorUnit::process(const Message& msg, double incidence, double arrival_time, Rng& rng) {
  return process_port(msg, mapper_.port(incidence), arrival_time, rng);
}

DetectorUnit::Detection DetectorUnit::process_port(const Message& msg, int port, double arrival_time, Rng& rng) {
  if (port < 0 || port >= mapper_.ports)
    throw std::domain_error("detector port out of range");
  ++absorbed_;
  x_.update_one_hot(static_cast<std::size_t>(port));
  reg_[static_cast<std::size_t>(port)] = msg;
  cplx t1 = 0.0;
  cplx t2 = 0.0;
  const auto x = x_.state();
  for (std::size_t k = 0; k < reg_.size(); ++k) {
    t1 += x[k] * reg_[k].c1;
    t2 += x[k] * reg_[k].c2;
  }
  Detection d;
  d.port = port;
  d.intensity = std::norm(t1) + std::norm(t2);
  d.click = step(d.intensity - uniform01(rng)) > 0.0;
  if (d.click) {
    ++count_;
    double t = arrival_time;
    if (delay_)
      t += uniform01(rng) * delay_->t_max * std::pow(std::max(0.0, 1.0 - d.intensity), delay_->h);
    d.click_time = t;
  }
  return d;
}

} // namespace ebcm
