// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here, not taken from the command line.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lightwake/charts.hpp"
#include "lightwake/engine.hpp"
#include "lightwake/errors.hpp"
#include "lightwake/events.hpp"
#include "lightwake/melody.hpp"
#include "lightwake/signal_core.hpp"
#include "lightwake/sources.hpp"
#include "support/fixture.hpp"
#include "support/log_grammar.hpp"
#include "support/oracle.hpp"
#include "support/tcp_client.hpp"
#include "support/wav_reader.hpp"

using namespace lightwake;
namespace fs = std::filesystem;

namespace {

constexpr double kValueTol = 1e-9;     // fixture values, unit norms, scale invariance
constexpr double kDegenerateEps = 1e-9;
constexpr double kFixtureBudgetS = 10.0;
constexpr double kOracleBudgetS = 60.0;
constexpr int kNormSamples = 10000;
constexpr int kDeltaPairs = 10000;
constexpr int kOracleTraces = 1000;
constexpr int kFlowchartTraces = 200;
constexpr int kSpeedTraces = 20;

// Collects failures for one criterion; the first few are echoed.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "none"; }

struct Run {
  SessionResult result;
  std::vector<SessionEvent> events;
  std::size_t consumed = 0;
};

Run run_vector(const std::vector<RawSample>& samples, Nanos sleep, Nanos period) {
  SessionConfig config;
  config.sleep_duration = sleep;
  config.period_length = period;
  VectorSource source(samples);
  MemoryEventLog log;
  Run r;
  r.result = run_session(config, source, log);
  r.events = log.events();
  r.consumed = source.consumed();
  return r;
}

std::vector<std::pair<Nanos, double>> delta_events(const std::vector<SessionEvent>& events) {
  std::vector<std::pair<Nanos, double>> out;
  for (const auto& e : events)
    if (e.kind == EventKind::DeltaComputed) out.emplace_back(e.t, *e.value);
  return out;
}

bool same_outcome(const DetectorOutcome& o, const oracle::Outcome& ref) {
  const bool hit = o.trigger == AlarmTrigger::ThresholdHit;
  return hit == ref.threshold_hit && o.alarm_time == ref.alarm_time && o.trigger_delta == ref.trigger_delta &&
         o.final_thresholds.t_min == ref.t_min && o.final_thresholds.t_max == ref.t_max &&
         o.final_thresholds.period_maxima == ref.learning_maxima;
}

std::string describe(const DetectorOutcome& o) {
  return std::string(to_string(o.trigger)) + " t=" + format_seconds(o.alarm_time) + " delta=" +
         opt(o.trigger_delta) + " t_min=" + opt(o.final_thresholds.t_min) + " t_max=" +
         opt(o.final_thresholds.t_max);
}

std::string describe(const oracle::Outcome& o) {
  return std::string(o.threshold_hit ? "ThresholdHit" : "SessionEnd") + " t=" + format_seconds(o.alarm_time) +
         " delta=" + opt(o.trigger_delta) + " t_min=" + opt(o.t_min) + " t_max=" + opt(o.t_max);
}

// Seeded synthetic night with varied layout and sleep model.
struct Scenario {
  std::vector<RawSample> samples;
  Nanos sleep = 0;
  Nanos period = 0;
};

Scenario synthetic_scenario(std::uint64_t seed, Nanos min_sleep, Nanos max_sleep) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
  const std::array<Nanos, 6> periods{minutes(10), minutes(15), minutes(20), minutes(25), minutes(30), minutes(60)};
  const std::array<double, 3> rates{1.0, 2.0, 4.0};

  Scenario sc;
  const auto span_min = (max_sleep - min_sleep) / minutes(1);
  sc.sleep = min_sleep + minutes(1) * static_cast<Nanos>(rng() % static_cast<std::uint64_t>(span_min + 1));
  do {
    sc.period = periods[rng() % periods.size()];
  } while (2 * sc.period > sc.sleep);

  SleepModelParams params;
  params.rng_seed = seed;
  params.cycle_length = minutes(30 + static_cast<Nanos>(rng() % 91));
  params.burst_rate_light = 0.02 + 0.3 * static_cast<double>(rng() % 1000) / 1000.0;
  params.burst_rate_deep = params.burst_rate_light * static_cast<double>(rng() % 100) / 400.0;

  TraceHeader header;
  header.sample_rate_hz = rates[rng() % rates.size()];
  // Traces sometimes stop short of the session end to exercise the fallback.
  header.duration = (rng() % 8 == 0) ? sc.sleep - sc.period / 2 : sc.sleep;
  header.label = "acceptance";
  sc.samples = generate_trace(params, header);
  return sc;
}

// ---------------------------------------------------------------------------

Check criterion_fixture(std::string& detail) {
  Check c;
  const auto samples = fixture::constructed_night();
  const auto start = std::chrono::steady_clock::now();
  const Run run = run_vector(samples, fixture::kSleep, fixture::kPeriod);
  const double elapsed = seconds_since(start);
  const auto& o = run.result.outcome;

  c.expect(o.trigger == AlarmTrigger::ThresholdHit, "trigger " + std::string(to_string(o.trigger)));
  c.expect(o.final_thresholds.t_min && std::abs(*o.final_thresholds.t_min - fixture::kTMin) <= kValueTol,
           "t_min " + opt(o.final_thresholds.t_min));
  c.expect(o.final_thresholds.t_max && std::abs(*o.final_thresholds.t_max - fixture::kTMax) <= kValueTol,
           "t_max " + opt(o.final_thresholds.t_max));
  c.expect(o.trigger_delta && std::abs(*o.trigger_delta - fixture::kAlarmDelta) <= kValueTol,
           "delta " + opt(o.trigger_delta));
  c.expect(o.alarm_time == fixture::kAlarmTime, "alarm at " + format_seconds(o.alarm_time));
  c.expect(elapsed < kFixtureBudgetS, "runtime " + num(elapsed) + " s");

  // The constructed trace must really have those maxima in periods 5 and 6.
  const auto ref = oracle::offline_reference(oracle::deltas(samples), fixture::kSleep, fixture::kPeriod);
  c.expect(ref.learning_maxima.size() == 7 && std::abs(ref.learning_maxima[4] - 1.662) <= kValueTol &&
               std::abs(ref.learning_maxima[5] - 0.497) <= kValueTol,
           "oracle period maxima do not match the construction");
  c.expect(same_outcome(o, ref), "oracle disagrees: " + describe(ref));

  std::ostringstream d;
  d << describe(o) << ", " << std::fixed;
  d.precision(3);
  d << elapsed << " s";
  detail = d.str();
  return c;
}

Check criterion_normalization(std::string& detail) {
  Check c;
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> log_mag(-3.0, std::log10(kSensorRangeG));
  double worst_norm = 0, worst_scale = 0;

  for (int i = 0; i < kNormSamples; ++i) {
    double x, y, z, len;
    do {
      x = unit(rng), y = unit(rng), z = unit(rng);
      len = std::sqrt(x * x + y * y + z * z);
    } while (len < 1e-3 || len > 1.0);
    const double mag = std::pow(10.0, log_mag(rng));
    const RawSample s{i, x / len * mag, y / len * mag, z / len * mag};

    const auto n = normalize(s);
    const double nn = std::sqrt(n.nx * n.nx + n.ny * n.ny + n.nz * n.nz);
    worst_norm = std::max(worst_norm, std::abs(nn - 1.0));
    if (std::abs(nn - 1.0) > kValueTol) c.expect(false, "norm " + num(nn));
    for (double v : {n.nx, n.ny, n.nz})
      if (!(v >= -1.0 && v <= 1.0)) c.expect(false, "component " + num(v));
    c.expect(n.t == s.t, "timestamp changed");

    for (double k : {1e-3, 1.0, 1e3}) {
      const auto m = normalize(RawSample{s.t, s.ax * k, s.ay * k, s.az * k});
      const double err = std::max({std::abs(m.nx - n.nx), std::abs(m.ny - n.ny), std::abs(m.nz - n.nz)});
      worst_scale = std::max(worst_scale, err);
      if (err > kValueTol) c.expect(false, "scale " + num(k) + " moved by " + num(err));
    }
  }

  // Degenerate guard: every reading shorter than the epsilon is rejected,
  // every reading comfortably above it is accepted.
  std::uniform_real_distribution<double> tiny_exp(-15.0, std::log10(kDegenerateEps) - 0.01);
  int rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    double x = unit(rng), y = unit(rng), z = unit(rng);
    const double len = std::sqrt(x * x + y * y + z * z);
    if (len == 0) continue;
    const double mag = std::pow(10.0, tiny_exp(rng));
    const RawSample s{i, x / len * mag, y / len * mag, z / len * mag};
    bool threw = false;
    try {
      (void)normalize(s);
    } catch (const DegenerateSample&) {
      threw = true;
    }
    c.expect(threw && !try_normalize(s), "accepted a reading of length " + num(mag));
    rejected += threw;

    const RawSample big{i, x / len * 2e-9, y / len * 2e-9, z / len * 2e-9};
    c.expect(try_normalize(big).has_value(), "rejected a reading of length 2e-9");
  }
  c.expect(!try_normalize(RawSample{0, 0, 0, 0}), "zero vector accepted");

  detail = std::to_string(kNormSamples) + " samples, max |norm-1|=" + num(worst_norm) +
           ", max scale drift=" + num(worst_scale) + ", " + std::to_string(rejected) + " degenerate rejected";
  return c;
}

Check criterion_delta_bound(std::string& detail) {
  Check c;
  std::mt19937_64 rng(777);
  std::normal_distribution<double> g(0.0, 1.0);
  const double bound = 2.0 * std::sqrt(3.0);
  auto unit_vec = [&](Nanos t) {
    double x, y, z, len;
    do {
      x = g(rng), y = g(rng), z = g(rng);
      len = std::sqrt(x * x + y * y + z * z);
    } while (len < 1e-6);
    return NormalizedSample{t, x / len, y / len, z / len};
  };
  double largest = 0;
  for (int i = 0; i < kDeltaPairs; ++i) {
    const auto a = unit_vec(0), b = unit_vec(1);
    const double md = manhattan_delta(a, b).value;
    const double ref = std::abs(a.nx - b.nx) + std::abs(a.ny - b.ny) + std::abs(a.nz - b.nz);
    largest = std::max(largest, md);
    if (!(md >= 0.0 && md <= bound + kValueTol)) c.expect(false, "delta " + num(md) + " out of range");
    if (md != ref) c.expect(false, "delta " + num(md) + " != " + num(ref));
  }

  const double r = 1.0 / std::sqrt(3.0);
  double antipodal = bound;
  for (int signs = 0; signs < 8; ++signs) {
    const double sx = (signs & 1) ? -r : r, sy = (signs & 2) ? -r : r, sz = (signs & 4) ? -r : r;
    const double md = manhattan_delta(NormalizedSample{0, sx, sy, sz}, NormalizedSample{1, -sx, -sy, -sz}).value;
    c.expect(std::abs(md - bound) <= kValueTol, "antipodal delta " + num(md));
    antipodal = md;
  }
  detail = std::to_string(kDeltaPairs) + " pairs, max=" + num(largest) + ", antipodal=" + num(antipodal) +
           " (2*sqrt(3)=" + num(bound) + ")";
  return c;
}

Check criterion_oracle(std::string& detail) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  int hits = 0;
  std::size_t samples = 0;
  for (int seed = 1; seed <= kOracleTraces; ++seed) {
    const auto sc = synthetic_scenario(static_cast<std::uint64_t>(seed), hours(1), hours(4));
    samples += sc.samples.size();
    const auto run = run_vector(sc.samples, sc.sleep, sc.period);
    const auto ref = oracle::offline_reference(oracle::deltas(sc.samples), sc.sleep, sc.period);
    hits += ref.threshold_hit;
    if (!same_outcome(run.result.outcome, ref))
      c.expect(false, "seed " + std::to_string(seed) + ": " + describe(run.result.outcome) + " vs " + describe(ref));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kOracleBudgetS, "runtime " + num(elapsed) + " s");
  c.expect(hits > 0 && hits < kOracleTraces, "scenarios never exercise both triggers");
  std::ostringstream d;
  d << kOracleTraces << " traces, " << samples << " samples, " << hits << " threshold hits, " << std::fixed;
  d.precision(2);
  d << elapsed << " s";
  detail = d.str();
  return c;
}

// Checks one session against the flowchart rules, reading only its event log
// and the number of samples the source gave up.
void check_flowchart(Check& c, const std::string& name, const std::vector<RawSample>& samples, Nanos sleep,
                     Nanos period, const Run& run) {
  const auto& ev = run.events;
  const auto& o = run.result.outcome;
  if (auto g = grammar::check(ev); !g.empty()) c.expect(false, name + ": " + g);

  const auto alarms = std::count_if(ev.begin(), ev.end(), [](const auto& e) { return e.kind == EventKind::AlarmFired; });
  c.expect(alarms == 1, name + ": " + std::to_string(alarms) + " alarms");
  if (alarms != 1) return;
  const auto alarm = std::find_if(ev.begin(), ev.end(), [](const auto& e) { return e.kind == EventKind::AlarmFired; });
  c.expect(alarm->t == o.alarm_time && alarm->trigger == o.trigger, name + ": alarm event disagrees with outcome");

  // Thresholds as last announced before the final period; none after.
  std::optional<double> t_min, t_max;
  bool in_final = false;
  Nanos final_at = -1;
  for (const auto& e : ev) {
    if (e.kind == EventKind::FinalPeriodEntered) in_final = true, final_at = e.t;
    if (e.kind == EventKind::ThresholdsUpdated) {
      c.expect(!in_final, name + ": thresholds changed in the final period");
      t_min = e.t_min, t_max = e.t_max;
    }
  }
  c.expect(final_at == sleep - period, name + ": final period entered at " + format_seconds(final_at));
  c.expect(o.final_thresholds.t_min == t_min && o.final_thresholds.t_max == t_max,
           name + ": outcome thresholds differ from the frozen ones");

  // First in-band final delta decides; none may precede it.
  std::optional<std::pair<Nanos, double>> first_hit;
  for (const auto& [t, v] : delta_events(ev))
    if (t >= sleep - period && t_min && t_max && *t_min <= v && v <= *t_max) {
      first_hit = {t, v};
      break;
    }
  if (o.trigger == AlarmTrigger::ThresholdHit) {
    c.expect(first_hit && first_hit->first == o.alarm_time && o.trigger_delta == first_hit->second,
             name + ": alarm is not the first in-band final delta");
    for (auto it = alarm + 1; it != ev.end(); ++it)
      c.expect(it->kind == EventKind::SessionEnded, name + ": activity after the alarm");
    // Measurements stopped: nothing past the alarm sample was pulled.
    const auto through_alarm = static_cast<std::size_t>(
        std::upper_bound(samples.begin(), samples.end(), o.alarm_time,
                         [](Nanos t, const RawSample& s) { return t < s.t; }) -
        samples.begin());
    c.expect(run.consumed == through_alarm, name + ": pulled " + std::to_string(run.consumed) +
                                                " samples, alarm sample is #" + std::to_string(through_alarm));
    c.expect(ev.back().t == o.alarm_time, name + ": session did not end at the alarm");
  } else {
    c.expect(!first_hit, name + ": in-band final delta ignored");
    c.expect(o.alarm_time == sleep && alarm->t == sleep && ev.back().t == sleep,
             name + ": SessionEnd at " + format_seconds(o.alarm_time));
    c.expect(!o.trigger_delta, name + ": SessionEnd carries a delta");
  }
}

Check criterion_flowchart(std::string& detail) {
  Check c;
  int hits = 0, ends = 0;
  auto tally = [&](const Run& r) { (r.result.outcome.trigger == AlarmTrigger::ThresholdHit ? hits : ends)++; };

  for (int seed = 5001; seed < 5001 + kFlowchartTraces; ++seed) {
    const auto sc = synthetic_scenario(static_cast<std::uint64_t>(seed), minutes(40), hours(3));
    const auto run = run_vector(sc.samples, sc.sleep, sc.period);
    check_flowchart(c, "seed " + std::to_string(seed), sc.samples, sc.sleep, sc.period, run);
    tally(run);
  }

  // The fixture, and the fixture with a still final hour (below the band).
  auto night = fixture::constructed_night();
  const auto fx = run_vector(night, fixture::kSleep, fixture::kPeriod);
  check_flowchart(c, "fixture", night, fixture::kSleep, fixture::kPeriod, fx);
  tally(fx);
  for (auto& s : night)
    if (s.t >= fixture::kSleep - fixture::kPeriod) s = RawSample{s.t, 0.0, 0.0, 1.0};
  const auto still = run_vector(night, fixture::kSleep, fixture::kPeriod);
  check_flowchart(c, "still final hour", night, fixture::kSleep, fixture::kPeriod, still);
  c.expect(still.result.outcome.trigger == AlarmTrigger::SessionEnd, "still final hour fired early");
  tally(still);

  // A stream that dies after the learning periods still ends exactly at sleep.
  std::vector<RawSample> cut(night.begin(), night.begin() + 4 * 3600 * 7);
  const auto early = run_vector(cut, fixture::kSleep, fixture::kPeriod);
  check_flowchart(c, "early end of stream", cut, fixture::kSleep, fixture::kPeriod, early);
  tally(early);

  c.expect(hits > 0 && ends > 0, "only one trigger exercised");
  detail = std::to_string(kFlowchartTraces + 3) + " sessions (" + std::to_string(hits) + " threshold hits, " +
           std::to_string(ends) + " session ends)";
  return c;
}

std::string jsonl_log(const std::vector<RawSample>& samples, Nanos sleep, Nanos period, double speed) {
  SessionConfig config;
  config.sleep_duration = sleep;
  config.period_length = period;
  config.speed = speed;
  VectorSource source(samples);
  std::ostringstream out;
  JsonlEventWriter writer(out);
  run_session(config, source, writer);
  return out.str();
}

Check criterion_speed(std::string& detail) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::size_t bytes = 0;
  for (int seed = 1; seed <= kSpeedTraces; ++seed) {
    SleepModelParams params;
    params.rng_seed = static_cast<std::uint64_t>(seed);
    params.cycle_length = minutes(10);
    params.burst_rate_light = 0.5;
    params.burst_rate_deep = 0.1;
    TraceHeader header;
    header.sample_rate_hz = 4;
    header.duration = minutes(20);
    const auto samples = generate_trace(params, header);
    const auto fast = jsonl_log(samples, minutes(20), minutes(5), 0.0);
    const auto paced = jsonl_log(samples, minutes(20), minutes(5), 3600.0);
    bytes += fast.size();
    c.expect(fast == paced, "seed " + std::to_string(seed) + ": logs differ");
  }
  std::ostringstream d;
  d << kSpeedTraces << " traces, " << bytes << " log bytes compared, " << std::fixed;
  d.precision(2);
  d << seconds_since(start) << " s";
  detail = d.str();
  return c;
}

Check criterion_sources(std::string& detail) {
  Check c;
  const auto samples = fixture::constructed_night();

  std::ostringstream csv;
  write_trace(csv, fixture::constructed_night_header(), samples);
  const auto trace = read_trace_text(csv.str());
  const auto file = run_vector(trace.samples, fixture::kSleep, fixture::kPeriod);

  std::string wire;
  for (const auto& s : samples)
    wire += format_seconds(s.t) + ' ' + format_double(s.ax) + ' ' + format_double(s.ay) + ' ' +
            format_double(s.az) + '\n';

  LiveSource live("127.0.0.1:0");
  std::thread client([&] { testnet::send_all(live.port(), wire); });
  SessionConfig config;
  config.sleep_duration = fixture::kSleep;
  config.period_length = fixture::kPeriod;
  MemoryEventLog log;
  SessionResult tcp;
  try {
    tcp = run_session(config, live, log);
  } catch (const std::exception& e) {
    c.expect(false, std::string("tcp session failed: ") + e.what());
  }
  client.join();

  c.expect(tcp.outcome == file.result.outcome, "outcomes differ: " + describe(tcp.outcome) + " vs " +
                                                   describe(file.result.outcome));
  const auto a = delta_events(log.events()), b = delta_events(file.events);
  c.expect(a == b, "delta sequences differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  c.expect(tcp.samples_accepted == file.result.samples_accepted, "accepted sample counts differ");
  detail = describe(tcp.outcome) + ", " + std::to_string(a.size()) + " deltas identical";
  return c;
}

Check criterion_audio(std::string& detail) {
  Check c;
  const auto melody = default_alarm_melody();
  auto render = [&] {
    std::ostringstream out;
    write_wav(out, synthesize_melody(melody, kDefaultAudioRateHz), kDefaultAudioRateHz);
    return out.str();
  };
  const auto first = render();
  const auto second = render();
  c.expect(first == second, "renders differ");

  const auto dir = fs::temp_directory_path() / "lightwake_acceptance_audio";
  fs::create_directories(dir);
  write_wav(dir / "alarm.wav", synthesize_melody(melody, kDefaultAudioRateHz), kDefaultAudioRateHz);
  std::ifstream in(dir / "alarm.wav", std::ios::binary);
  const std::string from_file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  c.expect(from_file == first, "file and stream output differ");

  const auto wav = wavcheck::parse(first);
  c.expect(wav.has_value(), "not a valid RIFF/WAVE file");
  if (!wav) return c;
  c.expect(wav->format == 1 && wav->channels == 1 && wav->bits == 16, "not 16-bit mono PCM");
  c.expect(wav->sample_rate == static_cast<std::uint32_t>(kDefaultAudioRateHz), "sample rate");
  const double expected = static_cast<double>(melody.total_duration_ms()) * kDefaultAudioRateHz / 1000.0;
  const double frames = static_cast<double>(wav->samples.size());
  c.expect(std::abs(frames - expected) <= 1.0, "frames " + num(frames) + " vs " + num(expected));
  detail = std::to_string(wav->samples.size()) + " frames at " + std::to_string(wav->sample_rate) + " Hz (" +
           std::to_string(melody.total_duration_ms()) + " ms), " + std::to_string(first.size()) + " bytes";
  return c;
}

std::map<std::string, std::string> read_key_values(const fs::path& p) {
  std::map<std::string, std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);)
    if (auto eq = line.find('='); eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  return out;
}

Check criterion_charts(std::string& detail) {
  Check c;
  const auto samples = fixture::constructed_night();
  SessionConfig config;
  config.sleep_duration = fixture::kSleep;
  config.period_length = fixture::kPeriod;
  VectorSource source(samples);
  std::stringstream jsonl;
  JsonlEventWriter writer(jsonl);
  const auto result = run_session(config, source, writer);

  const auto dir = fs::temp_directory_path() / "lightwake_acceptance_charts";
  fs::remove_all(dir);
  export_period_charts(parse_event_log(jsonl), dir);

  const auto expected =
      oracle::per_period_maxima(oracle::deltas(samples), fixture::kSleep, fixture::kPeriod, result.outcome.alarm_time);
  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") ++csvs;
  c.expect(csvs == static_cast<int>(expected.size()), std::to_string(csvs) + " CSV files");

  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto path = dir / ("period_" + std::to_string(k + 1) + ".csv");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    c.expect(line == "t_s,delta", path.filename().string() + ": header '" + line + "'");
    std::optional<double> max;
    while (std::getline(in, line)) {
      const double v = std::strtod(line.c_str() + line.find(',') + 1, nullptr);
      max = max ? std::max(*max, v) : v;
    }
    c.expect(max == expected[k], path.filename().string() + ": max " + opt(max) + " vs oracle " + opt(expected[k]));
  }

  auto kv = read_key_values(dir / "summary.txt");
  auto near = [&](const std::string& key, double want) {
    const auto it = kv.find(key);
    const bool ok = it != kv.end() && std::abs(std::strtod(it->second.c_str(), nullptr) - want) <= kValueTol;
    c.expect(ok, "summary " + key + (it == kv.end() ? " missing" : "=" + it->second));
  };
  near("t_min", fixture::kTMin);
  near("t_max", fixture::kTMax);
  near("alarm_delta", fixture::kAlarmDelta);
  c.expect(kv["alarm"] == "ThresholdHit", "summary alarm=" + kv["alarm"]);
  detail = std::to_string(csvs) + " period CSVs, summary t_min=" + kv["t_min"] + " t_max=" + kv["t_max"] +
           " alarm_delta=" + kv["alarm_delta"];
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check(std::string&)>>> criteria{
      {"fixture night reproduces thresholds and alarm", criterion_fixture},
      {"normalization suite", criterion_normalization},
      {"motion delta bound", criterion_delta_bound},
      {"streaming detector matches offline reference", criterion_oracle},
      {"flowchart semantics", criterion_flowchart},
      {"speed invariance of event logs", criterion_speed},
      {"TCP and file sources agree", criterion_sources},
      {"default melody WAV", criterion_audio},
      {"fixture chart export", criterion_charts},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    Check c;
    try {
      c = criteria[i].second(detail);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << '\n';
    for (std::size_t f = 0; f < std::min<std::size_t>(c.failures.size(), 5); ++f)
      std::cout << "    " << c.failures[f] << '\n';
    if (c.failures.size() > 5) std::cout << "    ... " << c.failures.size() - 5 << " more\n";
    std::cout.flush();
    failed += !c.ok();
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
