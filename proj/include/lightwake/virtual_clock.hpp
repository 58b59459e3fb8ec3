#pragma once

#include <chrono>
#include <optional>

#include "lightwake/timebase.hpp"

namespace lightwake {

// Paces delivery of virtually-timestamped samples against the wall clock.
// speed = virtual seconds per wall second; 0 disables pacing entirely.
// The first wait_until() call anchors virtual time to "now", and later
// deadlines are absolute, so pacing error does not accumulate.
class VirtualClock {
 public:
  using WallClock = std::chrono::steady_clock;

  explicit VirtualClock(double speed);

  double speed() const noexcept { return speed_; }

  // Blocks until the wall time that corresponds to virtual time t.
  void wait_until(Nanos t);

  // Wall instant at which virtual time t is due (anchor required).
  WallClock::time_point deadline(Nanos t) const;

 private:
  double speed_;
  std::optional<WallClock::time_point> wall_anchor_;
  Nanos virtual_anchor_ = 0;
};

}  // namespace lightwake
