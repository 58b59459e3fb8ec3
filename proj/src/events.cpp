#include "lightwake/events.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "lightwake/errors.hpp"

namespace lightwake {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 9> kKindNames{
    "SampleAccepted",     "SampleSkipped",   "DeltaComputed", "PeriodClosed", "ThresholdsUpdated",
    "FinalPeriodEntered", "StageClassified", "AlarmFired",    "SessionEnded"};

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> read_optional_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw MalformedLog(std::string("field '") + key + "' is not a number");
  return j.at(key).get<double>();
}

double read_number(const nlohmann::json& j, const char* key) {
  auto v = read_optional_number(j, key);
  if (!v) throw MalformedLog(std::string("missing field '") + key + "'");
  return *v;
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from_string(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<EventKind>(i);
  return std::nullopt;
}

std::string to_json_line(const EventLogHeader& header) {
  ordered_json j;
  j["v"] = header.version;
  j["kind"] = "header";
  j["sleep_ns"] = header.sleep_duration;
  j["period_ns"] = header.period_length;
  return j.dump();
}

std::string to_json_line(const SessionEvent& e) {
  ordered_json j;
  j["t_ns"] = e.t;
  j["kind"] = to_string(e.kind);
  switch (e.kind) {
    case EventKind::SampleSkipped:
      j["reason"] = e.reason;
      break;
    case EventKind::DeltaComputed:
      j["value"] = optional_number(e.value);
      break;
    case EventKind::PeriodClosed:
      j["index"] = e.index.value_or(0);
      j["period_max"] = optional_number(e.value);
      break;
    case EventKind::ThresholdsUpdated:
      j["t_min"] = optional_number(e.t_min);
      j["t_max"] = optional_number(e.t_max);
      break;
    case EventKind::StageClassified:
      j["stage"] = to_string(e.stage.value_or(SleepStage::REM));
      j["value"] = optional_number(e.value);
      break;
    case EventKind::AlarmFired:
      j["trigger"] = to_string(e.trigger.value_or(AlarmTrigger::SessionEnd));
      j["value"] = optional_number(e.value);
      break;
    default:
      break;
  }
  return j.dump();
}

void JsonlEventWriter::begin(const EventLogHeader& header) {
  out_ << to_json_line(header) << '\n' << std::flush;
}

void JsonlEventWriter::emit(const SessionEvent& event) {
  out_ << to_json_line(event) << '\n' << std::flush;
}

namespace {

SessionEvent event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedLog("record is not an object");
  if (!j.contains("t_ns") || !j.at("t_ns").is_number_integer())
    throw MalformedLog("missing integer t_ns");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw MalformedLog("missing kind");
  const auto kind = event_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw MalformedLog("unknown kind '" + j.at("kind").get<std::string>() + "'");

  SessionEvent e;
  e.t = j.at("t_ns").get<Nanos>();
  e.kind = *kind;
  switch (e.kind) {
    case EventKind::SampleSkipped:
      e.reason = j.value("reason", std::string{});
      break;
    case EventKind::DeltaComputed:
      e.value = read_number(j, "value");
      break;
    case EventKind::PeriodClosed:
      if (!j.contains("index") || !j.at("index").is_number_integer())
        throw MalformedLog("PeriodClosed without index");
      e.index = j.at("index").get<int>();
      e.value = read_optional_number(j, "period_max");
      break;
    case EventKind::ThresholdsUpdated:
      e.t_min = read_optional_number(j, "t_min");
      e.t_max = read_optional_number(j, "t_max");
      break;
    case EventKind::StageClassified: {
      const std::string stage = j.value("stage", std::string{});
      if (stage != "NREM" && stage != "REM") throw MalformedLog("bad stage '" + stage + "'");
      e.stage = stage == "NREM" ? SleepStage::NREM : SleepStage::REM;
      e.value = read_number(j, "value");
      break;
    }
    case EventKind::AlarmFired: {
      const std::string trigger = j.value("trigger", std::string{});
      if (trigger != "ThresholdHit" && trigger != "SessionEnd")
        throw MalformedLog("bad trigger '" + trigger + "'");
      e.trigger = trigger == "ThresholdHit" ? AlarmTrigger::ThresholdHit : AlarmTrigger::SessionEnd;
      e.value = read_optional_number(j, "value");
      break;
    }
    default:
      break;
  }
  return e;
}

}  // namespace

EventLog parse_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const bool terminated = !in.eof();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (terminated) continue;
      break;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      if (!terminated && have_header) {
        log.truncated = true;
        break;
      }
      throw MalformedLog("line " + std::to_string(line_no) + ": invalid JSON");
    }
    try {
      if (!have_header) {
        if (!j.is_object() || j.value("kind", std::string{}) != "header" || !j.contains("v"))
          throw MalformedLog("first record is not a header");
        if (!j.at("v").is_number_integer() || j.at("v").get<int>() != kEventLogVersion)
          throw MalformedLog("unsupported log version");
        log.header.version = kEventLogVersion;
        log.header.sleep_duration = j.at("sleep_ns").get<Nanos>();
        log.header.period_length = j.at("period_ns").get<Nanos>();
        have_header = true;
        continue;
      }
      SessionEvent e = event_from_json(j);
      if (!log.events.empty() && e.t < log.events.back().t)
        throw MalformedLog("timestamps go backwards");
      log.events.push_back(std::move(e));
    } catch (const MalformedLog& err) {
      throw MalformedLog("line " + std::to_string(line_no) + ": " + err.what());
    } catch (const nlohmann::json::exception& err) {
      throw MalformedLog("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  if (!have_header) throw MalformedLog("empty event log");
  return log;
}

EventLog parse_event_log_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_event_log(in);
}

}  // namespace lightwake
