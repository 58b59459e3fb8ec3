#pragma once

// Constructed 8-hour night: hourly
// periods, learning maxima peaking at 1.662 in period 5 (hours 4-5) and
// bottoming at 0.497 in period 6 (hours 5-6), and a final hour whose first
// in-band delta is 1.016.

#include <array>
#include <vector>

#include "lightwake/signal_core.hpp"
#include "lightwake/sources.hpp"

namespace fixture {

inline constexpr std::array<double, 7> kLearningMaxima{0.9, 1.1, 0.8, 1.2, 1.662, 0.497, 0.75};
inline constexpr double kTMin = 0.497;
inline constexpr double kTMax = 1.662;
inline constexpr double kAlarmDelta = 1.016;
inline constexpr lightwake::Nanos kSleep = lightwake::hours(8);
inline constexpr lightwake::Nanos kPeriod = lightwake::hours(1);
// Final-hour spike that produces the 1.016 delta: 7 h + 35 min.
inline constexpr lightwake::Nanos kAlarmTime = lightwake::hours(7) + lightwake::minutes(35);

// Raw reading tilted by the angle whose L1 distance from vertical is `delta`
// (0 <= delta <= 2), scaled by `magnitude` g, leaning toward one of four
// horizontal directions.
lightwake::RawSample tilted(lightwake::Nanos t, double delta, double magnitude, int direction);

// The whole night at 4 Hz.
std::vector<lightwake::RawSample> constructed_night();
lightwake::TraceHeader constructed_night_header();

}  // namespace fixture
