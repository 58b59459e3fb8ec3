#pragma once

#include <cstddef>

#include "lightwake/detector.hpp"
#include "lightwake/events.hpp"
#include "lightwake/sources.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake {

struct SessionConfig {
  Nanos sleep_duration = hours(8);
  Nanos period_length = hours(1);
  double speed = 0.0;  // virtual seconds per wall second; 0 = unpaced
};

// Throws ConfigInvalid.
void validate(const SessionConfig& config);

// Invoked exactly once per completed session.
class AlarmSink {
 public:
  virtual ~AlarmSink() = default;
  virtual void on_alarm(const DetectorOutcome& outcome) = 0;
};

struct SessionResult {
  DetectorOutcome outcome;
  std::size_t samples_accepted = 0;
  std::size_t samples_skipped = 0;
  std::size_t deltas = 0;
};

// Runs one sleep session: source -> normalize -> motion delta -> detector.
//
// The source is stopped as soon as a delta lands in the threshold band.
// Samples at or past sleep_duration are not consumed. If the stream ends
// first, virtual time jumps to sleep_duration and the session ends with a
// SessionEnd alarm. All event timestamps are virtual, so the log does not
// depend on `speed`.
//
// Source errors surface as SourceFailed after the events emitted so far have
// reached `events`.
SessionResult run_session(const SessionConfig& config, SampleSource& source, EventSink& events,
                          AlarmSink* alarm = nullptr);

}  // namespace lightwake
