#include "lightwake/detector.hpp"

#include <algorithm>
#include <string>

#include "lightwake/errors.hpp"

namespace lightwake {

std::string_view to_string(SleepStage stage) noexcept {
  return stage == SleepStage::NREM ? "NREM" : "REM";
}

std::string_view to_string(AlarmTrigger trigger) noexcept {
  return trigger == AlarmTrigger::ThresholdHit ? "ThresholdHit" : "SessionEnd";
}

PeriodLayout::PeriodLayout(Nanos sleep_duration, Nanos period_length)
    : sleep_duration_(sleep_duration), period_length_(period_length), learning_periods_(0) {
  if (period_length <= 0)
    throw SessionTooShort("period length must be positive");
  if (sleep_duration / 2 < period_length)
    throw SessionTooShort("sleep duration " + format_seconds(sleep_duration) +
                          "s leaves no learning period before the final " +
                          format_seconds(period_length) + "s period");
  const Nanos learning_span = final_start();
  learning_periods_ = static_cast<int>((learning_span + period_length - 1) / period_length);
}

int PeriodLayout::period_of(Nanos t) const noexcept {
  if (t >= final_start()) return final_index();
  if (t <= 0) return 0;
  return static_cast<int>(t / period_length_);
}

Nanos PeriodLayout::period_start(int index) const noexcept {
  if (index >= final_index()) return final_start();
  return static_cast<Nanos>(index) * period_length_;
}

Nanos PeriodLayout::period_end(int index) const noexcept {
  if (index >= final_index()) return sleep_duration_;
  return std::min(static_cast<Nanos>(index + 1) * period_length_, final_start());
}

SleepStage classify(double value, double t_min, double t_max) {
  if (t_min > t_max)
    throw InvalidThresholds("t_min " + format_double(t_min) + " exceeds t_max " +
                            format_double(t_max));
  return (t_min <= value && value <= t_max) ? SleepStage::NREM : SleepStage::REM;
}

Detector::Detector(Nanos sleep_duration, Nanos period_length)
    : layout_(sleep_duration, period_length) {}

void Detector::close_learning_period(int index) {
  const Nanos boundary = layout_.period_end(index);
  const std::optional<double> period_max = state_.running_period_max;
  // An empty period contributes nothing; a 0 entry would pin t_min to 0.
  if (period_max) {
    state_.period_maxima.push_back(*period_max);
    state_.t_min = *std::min_element(state_.period_maxima.begin(), state_.period_maxima.end());
  }
  state_.running_period_max.reset();
  if (observer_) {
    observer_->on_period_closed(boundary, index, period_max);
    if (period_max) observer_->on_thresholds_updated(boundary, state_);
  }

  if (index + 1 < layout_.learning_periods()) {
    phase_ = phase::Learning{index + 1};
  } else {
    phase_ = phase::FinalPeriod{};
    if (observer_) observer_->on_final_period_entered(layout_.final_start());
  }
}

void Detector::advance_to(Nanos t) {
  if (std::holds_alternative<phase::AlarmFired>(phase_))
    throw PhaseViolation("detector clock advanced after the alarm fired");
  if (t < clock_)
    throw OrderViolation("detector clock moved backwards to " + format_seconds(t) + "s");
  if (t > layout_.sleep_duration())
    throw PhaseViolation("time " + format_seconds(t) + "s is past the session end");
  clock_ = t;
  while (const auto* learning = std::get_if<phase::Learning>(&phase_)) {
    if (t < layout_.period_end(learning->period_index)) break;
    close_learning_period(learning->period_index);
  }
}

DetectorDecision Detector::ingest(const MotionDelta& delta) {
  if (std::holds_alternative<phase::AlarmFired>(phase_))
    throw PhaseViolation("delta ingested after the alarm fired");
  if (last_delta_t_ && delta.t <= *last_delta_t_)
    throw OrderViolation("delta at " + format_seconds(delta.t) + "s is not after " +
                         format_seconds(*last_delta_t_) + "s");
  if (delta.t >= layout_.sleep_duration())
    throw PhaseViolation("delta at " + format_seconds(delta.t) + "s is past the session end");
  advance_to(delta.t);
  last_delta_t_ = delta.t;

  if (std::holds_alternative<phase::Learning>(phase_)) {
    if (!state_.running_period_max || delta.value > *state_.running_period_max)
      state_.running_period_max = delta.value;
    if (!state_.t_max || delta.value > *state_.t_max) {
      state_.t_max = delta.value;
      if (observer_) observer_->on_thresholds_updated(delta.t, state_);
    }
    return std::nullopt;
  }

  // Final period: thresholds are frozen. Without a learned band there is
  // nothing to compare against and the session can only end by timeout.
  if (!state_.t_min || !state_.t_max) return std::nullopt;
  const SleepStage stage = classify(delta, *state_.t_min, *state_.t_max);
  if (observer_) observer_->on_stage_classified(delta.t, stage, delta.value);
  if (stage != SleepStage::NREM) return std::nullopt;

  phase_ = phase::AlarmFired{AlarmTrigger::ThresholdHit};
  return DetectorOutcome{delta.t, AlarmTrigger::ThresholdHit, delta.value, state_};
}

DetectorOutcome Detector::finalize(Nanos session_end) {
  if (!std::holds_alternative<phase::FinalPeriod>(phase_))
    throw PhaseViolation(std::holds_alternative<phase::AlarmFired>(phase_)
                             ? "finalize called after the alarm fired"
                             : "finalize called before the final period");
  if (session_end < clock_ || session_end > layout_.sleep_duration())
    throw PhaseViolation("session end " + format_seconds(session_end) +
                         "s is outside the final period");
  clock_ = session_end;
  phase_ = phase::AlarmFired{AlarmTrigger::SessionEnd};
  return DetectorOutcome{session_end, AlarmTrigger::SessionEnd, std::nullopt, state_};
}

}  // namespace lightwake
