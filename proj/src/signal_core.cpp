#include "lightwake/signal_core.hpp"

#include <cmath>
#include <string>

#include "lightwake/errors.hpp"

namespace lightwake {

bool is_valid_sample(const RawSample& s) noexcept {
  auto ok = [](double v) { return std::isfinite(v) && std::fabs(v) <= kSensorRangeG; };
  return s.t >= 0 && ok(s.ax) && ok(s.ay) && ok(s.az);
}

double euclidean_norm(double ax, double ay, double az) noexcept {
  return std::sqrt(ax * ax + ay * ay + az * az);
}

std::optional<NormalizedSample> try_normalize(const RawSample& s) noexcept {
  const double len = euclidean_norm(s.ax, s.ay, s.az);
  if (!(len >= kDegenerateNormEpsilon)) return std::nullopt;
  return NormalizedSample{s.t, s.ax / len, s.ay / len, s.az / len};
}

NormalizedSample normalize(const RawSample& s) {
  if (auto n = try_normalize(s)) return *n;
  throw DegenerateSample("degenerate sample at t=" + format_seconds(s.t) +
                         "s: vector length below " + format_double(kDegenerateNormEpsilon) + " g");
}

MotionDelta manhattan_delta(const NormalizedSample& prev, const NormalizedSample& curr) {
  if (prev.t >= curr.t)
    throw OrderViolation("motion delta requires prev.t < curr.t (got " + format_seconds(prev.t) +
                         "s, " + format_seconds(curr.t) + "s)");
  return MotionDelta{curr.t, std::fabs(curr.nx - prev.nx) + std::fabs(curr.ny - prev.ny) +
                                 std::fabs(curr.nz - prev.nz)};
}

}  // namespace lightwake
