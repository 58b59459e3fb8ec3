#include "lightwake/virtual_clock.hpp"

#include <cmath>
#include <thread>

#include "lightwake/errors.hpp"

namespace lightwake {

VirtualClock::VirtualClock(double speed) : speed_(speed) {
  if (!(speed >= 0.0) || !std::isfinite(speed)) throw ConfigInvalid("speed must be >= 0");
}

VirtualClock::WallClock::time_point VirtualClock::deadline(Nanos t) const {
  const double wall_ns = static_cast<double>(t - virtual_anchor_) / speed_;
  return *wall_anchor_ + std::chrono::nanoseconds(std::llround(wall_ns));
}

void VirtualClock::wait_until(Nanos t) {
  if (speed_ == 0.0) return;
  if (!wall_anchor_) {
    wall_anchor_ = WallClock::now();
    virtual_anchor_ = t;
    return;
  }
  std::this_thread::sleep_until(deadline(t));
}

}  // namespace lightwake
