#include "fixture.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>

namespace fixture {

using lightwake::Nanos;
using lightwake::RawSample;

namespace {

constexpr double kRateHz = 4.0;
constexpr Nanos kStep = lightwake::kNanosPerSecond / 4;

std::int64_t index_at(Nanos t) { return t / kStep; }

// Deterministic value stream in [0, 1) for magnitudes and filler spikes.
double unit_hash(std::uint64_t k) {
  std::uint64_t x = k * 0x9E3779B97F4A7C15ull;
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 29;
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

double magnitude(std::int64_t k) { return 0.97 + 0.06 * unit_hash(static_cast<std::uint64_t>(k)); }

}  // namespace

RawSample tilted(Nanos t, double delta, double mag, int direction) {
  // |sin a| + (1 - cos a) = delta  <=>  sqrt(2) sin(a - pi/4) = delta - 1
  const double angle = std::numbers::pi / 4 + std::asin((delta - 1.0) / std::numbers::sqrt2);
  const double h = mag * std::sin(angle);
  const double v = mag * std::cos(angle);
  switch (direction & 3) {
    case 0: return {t, h, 0.0, v};
    case 1: return {t, -h, 0.0, v};
    case 2: return {t, 0.0, h, v};
    default: return {t, 0.0, -h, v};
  }
}

std::vector<RawSample> constructed_night() {
  using lightwake::hours;
  using lightwake::seconds;

  // Isolated spikes: a single tilted sample between two vertical ones gives
  // two deltas of the same size.
  std::map<std::int64_t, double> spikes;
  for (std::size_t p = 0; p < kLearningMaxima.size(); ++p) {
    const Nanos start = hours(static_cast<std::int64_t>(p));
    spikes[index_at(start + seconds(1800))] = kLearningMaxima[p];
    for (int j = 0; j < 30; ++j)
      spikes[index_at(start + seconds(60 + 100 * j))] =
          0.05 + 0.4 * unit_hash(1000 * p + static_cast<std::uint64_t>(j) + 7);
  }
  const Nanos final_start = hours(7);
  for (int j = 0; j < 13; ++j)
    spikes[index_at(final_start + seconds(90 + 150 * j))] =
        0.05 + 0.4 * unit_hash(90000 + static_cast<std::uint64_t>(j));
  spikes[index_at(final_start + seconds(600))] = 0.2;
  spikes[index_at(final_start + seconds(1200))] = 0.31;
  spikes[index_at(kAlarmTime)] = kAlarmDelta;
  spikes[index_at(final_start + seconds(2700))] = 1.3;
  spikes[index_at(final_start + seconds(3000))] = 0.6;

  const std::int64_t n = index_at(kSleep);
  std::vector<RawSample> out;
  out.reserve(static_cast<std::size_t>(n));
  int direction = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    const Nanos t = k * kStep;
    const double mag = magnitude(k);
    if (auto it = spikes.find(k); it != spikes.end())
      out.push_back(tilted(t, it->second, mag, direction++));
    else
      out.push_back({t, 0.0, 0.0, mag});
  }
  return out;
}

lightwake::TraceHeader constructed_night_header() {
  return lightwake::TraceHeader{kRateHz, kSleep, "constructed night"};
}

}  // namespace fixture
