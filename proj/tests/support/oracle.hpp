#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// signal or detector code; they restate the math directly so they can serve
// as independent oracles.

#include <cstdint>
#include <optional>
#include <vector>

#include "lightwake/signal_core.hpp"

namespace oracle {

struct Delta {
  std::int64_t t;
  double value;
};

// Normalize each reading by its length from the origin, drop readings shorter
// than 1e-9, and take the L1 distance between consecutive survivors.
std::vector<Delta> deltas(const std::vector<lightwake::RawSample>& samples);

// Period index used by the oracle: learning periods are t / period until the
// final period, which is the last `period` of the session.
int period_index(std::int64_t t, std::int64_t sleep, std::int64_t period);

struct Outcome {
  bool threshold_hit = false;
  std::int64_t alarm_time = 0;
  std::optional<double> trigger_delta;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::vector<double> learning_maxima;  // non-empty learning periods only, in order
};

// Offline reference: one pass collecting per-learning-period maxima, then a
// scan of the final period for the first delta within [min, max].
Outcome offline_reference(const std::vector<Delta>& deltas, std::int64_t sleep, std::int64_t period);

// Per-period maxima over all periods (final included), nullopt for empty
// periods; deltas after `until` are ignored.
std::vector<std::optional<double>> per_period_maxima(const std::vector<Delta>& deltas,
                                                     std::int64_t sleep, std::int64_t period,
                                                     std::int64_t until);

}  // namespace oracle
