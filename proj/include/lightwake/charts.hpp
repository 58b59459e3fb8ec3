#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lightwake/detector.hpp"
#include "lightwake/events.hpp"

namespace lightwake {

struct ChartPoint {
  Nanos offset = 0;  // from the start of the period
  double delta = 0.0;

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

// Motion deltas of one period. period_number is 1-based: period 1 covers the
// first period_length of the session.
struct ChartSeries {
  int period_number = 1;
  std::vector<ChartPoint> points;
};

struct ChartSummary {
  std::vector<std::optional<double>> period_maxima;  // one per emitted series
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<AlarmTrigger> trigger;
  std::optional<Nanos> alarm_time;
  std::optional<double> alarm_delta;
};

struct PeriodCharts {
  std::vector<ChartSeries> series;
  ChartSummary summary;
};

// Projects the DeltaComputed events of a log onto per-period series. A
// complete log yields one series per period; a log cut short yields series
// up to the period of its last event. Throws MalformedLog when the header
// describes an impossible layout.
PeriodCharts build_period_charts(const EventLog& log);

// Writes period_<k>.csv ("t_s,delta") for every series plus summary.txt
// (key=value lines). Creates out_dir if needed.
void write_period_charts(const PeriodCharts& charts, const std::filesystem::path& out_dir);

PeriodCharts export_period_charts(const EventLog& log, const std::filesystem::path& out_dir);

// The summary.txt text for the given charts.
std::string format_summary(const PeriodCharts& charts);

}  // namespace lightwake
