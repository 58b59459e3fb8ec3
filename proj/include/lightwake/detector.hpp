#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lightwake/signal_core.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake {

enum class SleepStage { NREM, REM };
enum class AlarmTrigger { ThresholdHit, SessionEnd };

std::string_view to_string(SleepStage stage) noexcept;
std::string_view to_string(AlarmTrigger trigger) noexcept;

// The learned model: one maximum per completed learning period, plus the band
// [t_min, t_max] derived from them.
struct ThresholdState {
  std::vector<double> period_maxima;
  std::optional<double> running_period_max;  // current period, absent until its first delta
  std::optional<double> t_min;               // min(period_maxima)
  std::optional<double> t_max;               // max of every learning delta so far

  friend bool operator==(const ThresholdState&, const ThresholdState&) = default;
};

namespace phase {
struct Learning {
  int period_index = 0;
  friend bool operator==(const Learning&, const Learning&) = default;
};
struct FinalPeriod {
  friend bool operator==(const FinalPeriod&, const FinalPeriod&) = default;
};
struct AlarmFired {
  AlarmTrigger trigger = AlarmTrigger::SessionEnd;
  friend bool operator==(const AlarmFired&, const AlarmFired&) = default;
};
}  // namespace phase

// Learning(k) -> Learning(k+1) -> ... -> FinalPeriod -> AlarmFired (terminal).
using DetectorPhase = std::variant<phase::Learning, phase::FinalPeriod, phase::AlarmFired>;

struct DetectorOutcome {
  Nanos alarm_time = 0;
  AlarmTrigger trigger = AlarmTrigger::SessionEnd;
  std::optional<double> trigger_delta;  // present iff trigger == ThresholdHit
  ThresholdState final_thresholds;

  friend bool operator==(const DetectorOutcome&, const DetectorOutcome&) = default;
};

// nullopt means "keep measuring".
using DetectorDecision = std::optional<DetectorOutcome>;

struct DetectorSnapshot {
  ThresholdState thresholds;
  DetectorPhase phase;
};

// How a session of `sleep_duration` is cut into periods of `period_length`.
// Learning periods are half-open [k*P, (k+1)*P), the last one truncated at
// the start of the final period; the final period is always the last
// `period_length` of the session: [sleep_duration - P, sleep_duration).
class PeriodLayout {
 public:
  // Throws SessionTooShort unless period_length > 0 and
  // sleep_duration >= 2 * period_length.
  PeriodLayout(Nanos sleep_duration, Nanos period_length);

  Nanos sleep_duration() const noexcept { return sleep_duration_; }
  Nanos period_length() const noexcept { return period_length_; }
  Nanos final_start() const noexcept { return sleep_duration_ - period_length_; }
  int learning_periods() const noexcept { return learning_periods_; }
  int period_count() const noexcept { return learning_periods_ + 1; }
  int final_index() const noexcept { return learning_periods_; }

  // 0-based period containing t; times at or past the final start map to
  // final_index(), including t == sleep_duration.
  int period_of(Nanos t) const noexcept;
  Nanos period_start(int index) const noexcept;
  Nanos period_end(int index) const noexcept;

 private:
  Nanos sleep_duration_;
  Nanos period_length_;
  int learning_periods_;
};

// Binary stage gate with inclusive bounds. Throws InvalidThresholds if
// t_min > t_max.
SleepStage classify(double value, double t_min, double t_max);
inline SleepStage classify(const MotionDelta& delta, double t_min, double t_max) {
  return classify(delta.value, t_min, t_max);
}

// Receives the detector's internal transitions, in non-decreasing time.
class DetectorObserver {
 public:
  virtual ~DetectorObserver() = default;
  virtual void on_period_closed(Nanos /*t*/, int /*index*/, std::optional<double> /*period_max*/) {}
  virtual void on_thresholds_updated(Nanos /*t*/, const ThresholdState& /*state*/) {}
  virtual void on_final_period_entered(Nanos /*t*/) {}
  virtual void on_stage_classified(Nanos /*t*/, SleepStage /*stage*/, double /*value*/) {}
};

// Single-session light-sleep detector. Learns the threshold band while in the
// learning periods, freezes it on entry to the final period, and then fires at
// the first delta inside the band.
class Detector {
 public:
  Detector(Nanos sleep_duration, Nanos period_length);

  const PeriodLayout& layout() const noexcept { return layout_; }
  const DetectorPhase& phase() const noexcept { return phase_; }

  // Not owned; must outlive the detector or be reset to nullptr.
  void set_observer(DetectorObserver* observer) noexcept { observer_ = observer; }

  // Moves the detector's clock forward, closing every period that ends at or
  // before t. Throws OrderViolation when t goes backwards and PhaseViolation
  // once the alarm has fired or t is past the session end.
  void advance_to(Nanos t);

  DetectorDecision ingest(const MotionDelta& delta);

  // Resolves a final period that saw no in-band delta. Only legal in the
  // FinalPeriod phase.
  DetectorOutcome finalize(Nanos session_end);

  DetectorSnapshot snapshot() const { return {state_, phase_}; }

 private:
  void close_learning_period(int index);

  PeriodLayout layout_;
  ThresholdState state_;
  DetectorPhase phase_{phase::Learning{0}};
  Nanos clock_ = 0;
  std::optional<Nanos> last_delta_t_;
  DetectorObserver* observer_ = nullptr;
};

}  // namespace lightwake
