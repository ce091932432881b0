#pragma once
#include <cstdint>

namespace ebcm {

/// One detection event as persisted per station.
struct EventRecord {
  std::uint64_t event_index = 0;
  int station = 0;
  int outcome = 0;       ///< +1/-1 for two-outcome stations, click bit otherwise
  double time_tag = 0.0; ///< units 1/f
  double setting = 0.0;  ///< angle or switch value in force for this event
  double sweep_value = 0.0;

  bool operator==(const EventRecord&) const = default;
};

} // namespace ebcm
