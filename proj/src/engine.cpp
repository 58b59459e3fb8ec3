#include "lightwake/engine.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "lightwake/errors.hpp"
#include "lightwake/virtual_clock.hpp"

namespace lightwake {

void validate(const SessionConfig& config) {
  if (config.period_length <= 0) throw ConfigInvalid("period length must be positive");
  if (config.sleep_duration / 2 < config.period_length)
    throw ConfigInvalid("sleep duration must be at least twice the period length");
  if (!(config.speed >= 0.0) || !std::isfinite(config.speed))
    throw ConfigInvalid("speed must be a finite value >= 0");
}

namespace {

SessionEvent make_event(Nanos t, EventKind kind) {
  SessionEvent e;
  e.t = t;
  e.kind = kind;
  return e;
}

// Turns detector transitions into log records.
class EventBridge final : public DetectorObserver {
 public:
  explicit EventBridge(EventSink& sink) : sink_(sink) {}

  void on_period_closed(Nanos t, int index, std::optional<double> period_max) override {
    SessionEvent e = make_event(t, EventKind::PeriodClosed);
    e.index = index;
    e.value = period_max;
    sink_.emit(e);
  }
  void on_thresholds_updated(Nanos t, const ThresholdState& state) override {
    SessionEvent e = make_event(t, EventKind::ThresholdsUpdated);
    e.t_min = state.t_min;
    e.t_max = state.t_max;
    sink_.emit(e);
  }
  void on_final_period_entered(Nanos t) override {
    sink_.emit(make_event(t, EventKind::FinalPeriodEntered));
  }
  void on_stage_classified(Nanos t, SleepStage stage, double value) override {
    SessionEvent e = make_event(t, EventKind::StageClassified);
    e.stage = stage;
    e.value = value;
    sink_.emit(e);
  }

 private:
  EventSink& sink_;
};

void emit_alarm(EventSink& events, const DetectorOutcome& outcome) {
  SessionEvent fired = make_event(outcome.alarm_time, EventKind::AlarmFired);
  fired.trigger = outcome.trigger;
  fired.value = outcome.trigger_delta;
  events.emit(fired);
  events.emit(make_event(outcome.alarm_time, EventKind::SessionEnded));
}

}  // namespace

SessionResult run_session(const SessionConfig& config, SampleSource& source, EventSink& events,
                          AlarmSink* alarm) {
  validate(config);
  Detector detector(config.sleep_duration, config.period_length);
  VirtualClock clock(config.speed);
  EventBridge bridge(events);
  detector.set_observer(&bridge);

  events.begin(EventLogHeader{kEventLogVersion, config.sleep_duration, config.period_length});

  SessionResult result;
  std::optional<NormalizedSample> prev;
  std::optional<Nanos> last_t;
  std::optional<DetectorOutcome> outcome;

  while (!outcome) {
    std::optional<RawSample> sample;
    try {
      sample = source.next();
    } catch (const SourceError& err) {
      throw SourceFailed(std::string("source failed: ") + err.what());
    }
    if (!sample) break;
    if (sample->t >= config.sleep_duration) {
      source.stop();
      break;
    }
    if (!is_valid_sample(*sample))
      throw SourceFailed("source produced an out-of-range sample at t=" +
                         format_seconds(sample->t) + "s");
    if (last_t && sample->t <= *last_t)
      throw SourceFailed("source produced non-increasing time " + format_seconds(sample->t) + "s");
    last_t = sample->t;

    clock.wait_until(sample->t);
    detector.advance_to(sample->t);

    auto normalized = try_normalize(*sample);
    if (!normalized) {
      ++result.samples_skipped;
      spdlog::warn("skipping degenerate sample at t={}s", format_seconds(sample->t));
      SessionEvent skipped = make_event(sample->t, EventKind::SampleSkipped);
      skipped.reason = "degenerate";
      events.emit(skipped);
      continue;
    }
    ++result.samples_accepted;
    events.emit(make_event(sample->t, EventKind::SampleAccepted));

    if (prev) {
      const MotionDelta delta = manhattan_delta(*prev, *normalized);
      ++result.deltas;
      SessionEvent computed = make_event(delta.t, EventKind::DeltaComputed);
      computed.value = delta.value;
      events.emit(computed);
      outcome = detector.ingest(delta);
    }
    prev = normalized;
  }

  if (outcome) {
    // The sleeper is in the light-sleep band: stop measuring now.
    source.stop();
  } else {
    detector.advance_to(config.sleep_duration);
    outcome = detector.finalize(config.sleep_duration);
  }
  emit_alarm(events, *outcome);
  if (alarm) alarm->on_alarm(*outcome);

  result.outcome = std::move(*outcome);
  return result;
}

}  // namespace lightwake
