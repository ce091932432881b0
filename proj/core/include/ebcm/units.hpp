#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ebcm/dlm.hpp"
#include "ebcm/message.hpp"
#include "ebcm/optics.hpp"
#include "ebcm/random.hpp"

namespace ebcm {

/// Two-port adaptive unit shared by the dielectric interface, the beam
/// splitters and the tunneling gap. Only the transformation matrix differs.
class InterfaceUnit {
public:
  struct Output {
    int port;
    Message msg;
  };

  explicit InterfaceUnit(const optics::Matrix4& t, double gamma = dlm::kDefaultGamma);

  /// Absorb one messenger on `port` and emit exactly one. Port 0 is the
  /// medium-1 (reflection) side, port 1 the medium-2 (transmission) side.
  Output process(int port, const Message& msg, Rng& rng);

  const dlm::VectorDlm& machine() const noexcept { return x_; }
  const std::array<Message, 2>& registers() const noexcept { return reg_; }
  const optics::Matrix4& matrix() const noexcept { return t_; }
  std::uint64_t processed() const noexcept { return processed_; }

private:
  optics::Matrix4 t_;
  dlm::VectorDlm x_;
  std::array<Message, 2> reg_{};
  std::uint64_t processed_ = 0;
};

InterfaceUnit make_interface_unit(double theta, double n1, double n2, double gamma = dlm::kDefaultGamma);
InterfaceUnit make_bs_unit(double gamma = dlm::kDefaultGamma);
InterfaceUnit make_pbs_unit(double gamma = dlm::kDefaultGamma);
InterfaceUnit make_gap_unit(double w, double n, double theta, double gamma = dlm::kDefaultGamma);

/// Extra click delay r' * t_max * (1 - |T|^2)^h.
struct DelayModel {
  double t_max = 2000.0;
  double h = 8.0;
};

/// Bins an incidence angle, measured from the detector normal, uniformly over
/// [-half_arc, half_arc] into `ports` bins.
struct PortMapper {
  int ports = 1;
  double half_arc = 0.5 * kPi;

  int port(double incidence) const;
};

class DetectorUnit {
public:
  struct Detection {
    bool click = false;
    std::optional<double> click_time;
    double intensity = 0.0; ///< |T|^2
    int port = 0;
  };

  DetectorUnit(PortMapper mapper, double gamma_hat = dlm::kDefaultGamma,
               std::optional<DelayModel> delay = std::nullopt);

  /// Port chosen by the mapper from the incidence angle.
  Detection process(const Message& msg, double incidence, double arrival_time, Rng& rng);
  /// Port given directly.
  Detection process_port(const Message& msg, int port, double arrival_time, Rng& rng);

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t absorbed() const noexcept { return absorbed_; }
  const dlm::VectorDlm& machine() const noexcept { return x_; }
  const PortMapper& mapper() const noexcept { return mapper_; }

private:
  PortMapper mapper_;
  dlm::VectorDlm x_;
  std::vector<Message> reg_;
  std::optional<DelayModel> delay_;
  std::uint64_t count_ = 0;
  std::uint64_t absorbed_ = 0;
};

} // namespace ebcm
