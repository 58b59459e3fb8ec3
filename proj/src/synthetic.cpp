#include <algorithm>
#include <cmath>
#include <numbers>

#include "lightwake/errors.hpp"
#include "lightwake/sources.hpp"

namespace lightwake {

namespace {

constexpr double kMaxPostureTiltRad = std::numbers::pi / 6.0;
constexpr double kMinBurstSeconds = 1.0;
constexpr double kMaxBurstSeconds = 5.0;

}  // namespace

void validate(const SleepModelParams& p) {
  if (p.cycle_length <= 0) throw InvalidParams("cycle length must be positive");
  if (!(p.rem_fraction > 0.0 && p.rem_fraction < 1.0))
    throw InvalidParams("rem_fraction must lie in (0, 1)");
  if (!(p.quiet_noise_sigma >= 0.0 && p.quiet_noise_sigma <= 0.5))
    throw InvalidParams("quiet_noise_sigma must lie in [0, 0.5] g");
  if (!(p.burst_rate_deep >= 0.0) || !(p.burst_rate_light >= 0.0))
    throw InvalidParams("burst rates must be non-negative");
  // Both zero is the quiescent sleeper; otherwise light sleep must move more.
  if (!(p.burst_rate_deep < p.burst_rate_light) &&
      !(p.burst_rate_deep == 0.0 && p.burst_rate_light == 0.0))
    throw InvalidParams("burst_rate_deep must be below burst_rate_light");
  if (!(p.burst_amplitude_min >= 0.0 && p.burst_amplitude_min <= p.burst_amplitude_max &&
        p.burst_amplitude_max <= 3.0))
    throw InvalidParams("burst amplitude range must satisfy 0 <= min <= max <= 3 g");
}

ModelStage stage_at(const SleepModelParams& p, Nanos t) noexcept {
  const Nanos pos = t % p.cycle_length;
  const Nanos nrem = std::llround(static_cast<double>(p.cycle_length) * (1.0 - p.rem_fraction));
  if (pos >= nrem) return ModelStage::REM;
  if (pos < nrem / 4 || pos >= 3 * nrem / 4) return ModelStage::Light;
  return ModelStage::Deep;
}

SyntheticSource::SyntheticSource(const SleepModelParams& params, const TraceHeader& header)
    : params_(params), header_(header), rng_(params.rng_seed) {
  validate(params_);
  validate(header_);
  if (header_.duration <= 0) throw InvalidParams("synthetic trace needs a positive duration");
}

double SyntheticSource::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double SyntheticSource::gaussian() {
  if (spare_gaussian_) return *std::exchange(spare_gaussian_, std::nullopt);
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = r * std::sin(theta);
  return r * std::cos(theta);
}

void SyntheticSource::random_direction(double& x, double& y, double& z) {
  z = 2.0 * uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  x = r * std::cos(phi);
  y = r * std::sin(phi);
}

void SyntheticSource::tilt_posture() {
  const double tilt = kMaxPostureTiltRad * uniform();
  const double azimuth = 2.0 * std::numbers::pi * uniform();
  gx_ = std::sin(tilt) * std::cos(azimuth);
  gy_ = std::sin(tilt) * std::sin(azimuth);
  gz_ = std::cos(tilt);
}

std::optional<RawSample> SyntheticSource::next() {
  if (stopped_) return std::nullopt;
  const Nanos t = std::llround(static_cast<double>(index_) * (1e9 / header_.sample_rate_hz));
  if (t >= header_.duration) return std::nullopt;
  ++index_;

  const double dt_min = 1.0 / (60.0 * header_.sample_rate_hz);
  const double rate = stage_at(params_, t) == ModelStage::Light ? params_.burst_rate_light
                                                                : params_.burst_rate_deep;
  const double start_draw = uniform();
  const bool in_burst = t < burst_end_;
  if (!in_burst && burst_end_ >= 0) {
    burst_end_ = -1;
    tilt_posture();
  }
  if (!in_burst && start_draw < 1.0 - std::exp(-rate * dt_min)) {
    const double secs = kMinBurstSeconds + (kMaxBurstSeconds - kMinBurstSeconds) * uniform();
    burst_end_ = t + std::llround(secs * 1e9);
    burst_amplitude_ = params_.burst_amplitude_min +
                       (params_.burst_amplitude_max - params_.burst_amplitude_min) * uniform();
  }

  double x = gx_, y = gy_, z = gz_;
  if (t < burst_end_) {
    double dx, dy, dz;
    random_direction(dx, dy, dz);
    x += burst_amplitude_ * dx;
    y += burst_amplitude_ * dy;
    z += burst_amplitude_ * dz;
  }
  x += params_.quiet_noise_sigma * gaussian();
  y += params_.quiet_noise_sigma * gaussian();
  z += params_.quiet_noise_sigma * gaussian();

  auto clamp = [](double v) { return std::clamp(v, -kSensorRangeG, kSensorRangeG); };
  return RawSample{t, clamp(x), clamp(y), clamp(z)};
}

std::vector<RawSample> generate_trace(const SleepModelParams& params, const TraceHeader& header) {
  SyntheticSource source(params, header);
  std::vector<RawSample> out;
  out.reserve(static_cast<std::size_t>(
      static_cast<double>(header.duration) * 1e-9 * header.sample_rate_hz + 1));
  while (auto s = source.next()) out.push_back(*s);
  return out;
}

}  // namespace lightwake
