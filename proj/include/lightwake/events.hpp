#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightwake/detector.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake {

inline constexpr int kEventLogVersion = 1;

enum class EventKind {
  SampleAccepted,
  SampleSkipped,
  DeltaComputed,
  PeriodClosed,
  ThresholdsUpdated,
  FinalPeriodEntered,
  StageClassified,
  AlarmFired,
  SessionEnded,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view name) noexcept;

// One audit-log record. Only the fields relevant to `kind` are set:
//   SampleSkipped      reason
//   DeltaComputed      value
//   PeriodClosed       index, value (the period max; absent for an empty period)
//   ThresholdsUpdated  t_min, t_max
//   StageClassified    stage, value
//   AlarmFired         trigger, value (absent for SessionEnd)
struct SessionEvent {
  Nanos t = 0;
  EventKind kind = EventKind::SampleAccepted;
  std::optional<double> value;
  std::optional<int> index;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<SleepStage> stage;
  std::optional<AlarmTrigger> trigger;
  std::string reason;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

// First line of every log.
struct EventLogHeader {
  int version = kEventLogVersion;
  Nanos sleep_duration = 0;
  Nanos period_length = 0;

  friend bool operator==(const EventLogHeader&, const EventLogHeader&) = default;
};

std::string to_json_line(const EventLogHeader& header);
std::string to_json_line(const SessionEvent& event);

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void begin(const EventLogHeader& /*header*/) {}
  virtual void emit(const SessionEvent& event) = 0;
};

// Writes JSON Lines and flushes after every record, so a log cut short by a
// crash is always a prefix of the complete log.
class JsonlEventWriter final : public EventSink {
 public:
  explicit JsonlEventWriter(std::ostream& out) : out_(out) {}
  void begin(const EventLogHeader& header) override;
  void emit(const SessionEvent& event) override;

 private:
  std::ostream& out_;
};

class MemoryEventLog final : public EventSink {
 public:
  void begin(const EventLogHeader& header) override { header_ = header; }
  void emit(const SessionEvent& event) override { events_.push_back(event); }

  const EventLogHeader& header() const noexcept { return header_; }
  const std::vector<SessionEvent>& events() const noexcept { return events_; }

 private:
  EventLogHeader header_;
  std::vector<SessionEvent> events_;
};

// Forwards to several sinks in order.
class TeeEventSink final : public EventSink {
 public:
  explicit TeeEventSink(std::vector<EventSink*> sinks) : sinks_(std::move(sinks)) {}
  void begin(const EventLogHeader& header) override {
    for (auto* s : sinks_) s->begin(header);
  }
  void emit(const SessionEvent& event) override {
    for (auto* s : sinks_) s->emit(event);
  }

 private:
  std::vector<EventSink*> sinks_;
};

struct EventLog {
  EventLogHeader header;
  std::vector<SessionEvent> events;
  bool truncated = false;  // the final line was cut off mid-record
};

// Parses a JSONL event log. An unterminated final line is treated as a crash
// artefact and dropped (truncated = true); any other bad line, a missing or
// unsupported header, or out-of-order timestamps throw MalformedLog.
EventLog parse_event_log(std::istream& in);
EventLog parse_event_log_text(std::string_view text);

}  // namespace lightwake
