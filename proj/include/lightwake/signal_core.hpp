#pragma once

#include <optional>

#include "lightwake/timebase.hpp"

namespace lightwake {

// Sensor full-scale range of the accelerometer, per axis, in g.
inline constexpr double kSensorRangeG = 5.0;

// Readings whose Euclidean length falls below this are physically impossible
// (gravity alone gives ~1 g) and are rejected by normalize().
inline constexpr double kDegenerateNormEpsilon = 1e-9;

// One accelerometer reading, acceleration per axis in g.
struct RawSample {
  Nanos t = 0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  friend bool operator==(const RawSample&, const RawSample&) = default;
};

// Unit-length direction of a RawSample.
struct NormalizedSample {
  Nanos t = 0;
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;

  friend bool operator==(const NormalizedSample&, const NormalizedSample&) = default;
};

// L1 distance between two consecutive normalized samples, stamped with the
// later sample's time. Dimensionless, in [0, 2*sqrt(3)].
struct MotionDelta {
  Nanos t = 0;
  double value = 0.0;

  friend bool operator==(const MotionDelta&, const MotionDelta&) = default;
};

// True when every component is finite and within the sensor range and t >= 0.
bool is_valid_sample(const RawSample& s) noexcept;

// Length of the acceleration vector measured from the origin.
double euclidean_norm(double ax, double ay, double az) noexcept;

// Divides each component by the vector length. Throws DegenerateSample when
// the length is below kDegenerateNormEpsilon.
NormalizedSample normalize(const RawSample& s);

// Same as normalize() but reports a degenerate reading as nullopt.
std::optional<NormalizedSample> try_normalize(const RawSample& s) noexcept;

// Throws OrderViolation unless prev.t < curr.t.
MotionDelta manhattan_delta(const NormalizedSample& prev, const NormalizedSample& curr);

}  // namespace lightwake
