#include "lightwake/charts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lightwake/errors.hpp"

namespace lightwake {

PeriodCharts build_period_charts(const EventLog& log) {
  std::optional<PeriodLayout> layout;
  try {
    layout.emplace(log.header.sleep_duration, log.header.period_length);
  } catch (const SessionTooShort& err) {
    throw MalformedLog(std::string("header describes an invalid session: ") + err.what());
  }

  bool complete = false;
  for (const auto& e : log.events)
    if (e.kind == EventKind::SessionEnded) complete = true;

  int count = layout->period_count();
  if (!complete) {
    count = log.events.empty() ? 1 : layout->period_of(log.events.back().t) + 1;
  }

  PeriodCharts charts;
  for (int k = 0; k < count; ++k) charts.series.push_back(ChartSeries{k + 1, {}});
  charts.summary.period_maxima.assign(static_cast<std::size_t>(count), std::nullopt);

  for (const auto& e : log.events) {
    switch (e.kind) {
      case EventKind::DeltaComputed: {
        if (!e.value) throw MalformedLog("DeltaComputed without a value");
        if (e.t < 0 || e.t >= layout->sleep_duration())
          throw MalformedLog("delta at " + format_seconds(e.t) + "s lies outside the session");
        const int k = layout->period_of(e.t);
        if (k >= count) break;
        charts.series[k].points.push_back({e.t - layout->period_start(k), *e.value});
        auto& best = charts.summary.period_maxima[k];
        if (!best || *e.value > *best) best = *e.value;
        break;
      }
      case EventKind::ThresholdsUpdated:
        charts.summary.t_min = e.t_min;
        charts.summary.t_max = e.t_max;
        break;
      case EventKind::AlarmFired:
        charts.summary.trigger = e.trigger;
        charts.summary.alarm_time = e.t;
        charts.summary.alarm_delta = e.value;
        break;
      default:
        break;
    }
  }
  return charts;
}

std::string format_summary(const PeriodCharts& charts) {
  const auto num = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("none");
  };
  const ChartSummary& s = charts.summary;
  std::ostringstream out;
  out << "periods=" << charts.series.size() << '\n';
  for (std::size_t k = 0; k < s.period_maxima.size(); ++k)
    out << "period_" << (k + 1) << "_max=" << num(s.period_maxima[k]) << '\n';
  out << "t_min=" << num(s.t_min) << '\n';
  out << "t_max=" << num(s.t_max) << '\n';
  out << "alarm=" << (s.trigger ? std::string(to_string(*s.trigger)) : "none") << '\n';
  out << "alarm_t_s=" << (s.alarm_time ? format_seconds(*s.alarm_time) : "none") << '\n';
  out << "alarm_delta=" << num(s.alarm_delta) << '\n';
  return out.str();
}

void write_period_charts(const PeriodCharts& charts, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create '" + out_dir.string() + "': " + ec.message());

  auto open = [&](const std::string& name) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + (out_dir / name).string() + "'");
    return out;
  };
  for (const auto& series : charts.series) {
    auto out = open("period_" + std::to_string(series.period_number) + ".csv");
    out << "t_s,delta\n";
    for (const auto& p : series.points)
      out << format_seconds(p.offset) << ',' << format_double(p.delta) << '\n';
  }
  auto summary = open("summary.txt");
  summary << format_summary(charts);
}

PeriodCharts export_period_charts(const EventLog& log, const std::filesystem::path& out_dir) {
  PeriodCharts charts = build_period_charts(log);
  write_period_charts(charts, out_dir);
  return charts;
}

}  // namespace lightwake
