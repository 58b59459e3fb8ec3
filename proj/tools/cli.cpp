#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "lightwake/charts.hpp"
#include "lightwake/engine.hpp"
#include "lightwake/errors.hpp"
#include "lightwake/melody.hpp"
#include "lightwake/sources.hpp"

namespace lightwake::cli {

namespace {

// Raised for flag values that parse but make no sense (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Nanos duration_flag(const std::string& flag, const std::string& text, Nanos default_unit) {
  auto d = parse_duration(text, default_unit);
  if (!d || *d <= 0) throw UsageError(flag + ": expected a positive duration, got '" + text + "'");
  return *d;
}

struct GenerateArgs {
  std::uint64_t seed = 42;
  std::string hours = "8";
  double rate_hz = kDefaultSampleRateHz;
  std::string cycle = "90";
  std::string out;
  std::string label;
  double burst_light = SleepModelParams{}.burst_rate_light;
  double burst_deep = SleepModelParams{}.burst_rate_deep;
  double noise_sigma = SleepModelParams{}.quiet_noise_sigma;
};

struct RunArgs {
  std::string trace;
  std::string listen;
  std::string sleep;
  std::string period = "60";
  double speed = 0.0;
  std::string log;
  std::string alarm_wav;
  std::string melody;
  int audio_rate = kDefaultAudioRateHz;
};

struct ChartsArgs {
  std::string log;
  std::string out_dir;
};

struct MelodyArgs {
  std::string melody;
  std::string out;
  int audio_rate = kDefaultAudioRateHz;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  SleepModelParams params;
  params.rng_seed = a.seed;
  params.cycle_length = duration_flag("--cycle-min", a.cycle, kNanosPerMinute);
  params.burst_rate_light = a.burst_light;
  params.burst_rate_deep = a.burst_deep;
  params.quiet_noise_sigma = a.noise_sigma;

  TraceHeader header;
  header.sample_rate_hz = a.rate_hz;
  header.duration = duration_flag("--hours", a.hours, kNanosPerHour);
  header.label = a.label.empty() ? "synthetic seed=" + std::to_string(a.seed) : a.label;
  try {
    validate(params);
    validate(header);
  } catch (const InvalidParams& e) {
    throw UsageError(e.what());
  }

  const auto samples = generate_trace(params, header);
  write_trace(a.out, header, samples);
  out << "trace=" << a.out << " samples=" << samples.size()
      << " duration_s=" << format_seconds(header.duration) << '\n';
  return kSuccess;
}

class WavAlarm final : public AlarmSink {
 public:
  WavAlarm(std::string path, Melody melody, int rate)
      : path_(std::move(path)), melody_(std::move(melody)), rate_(rate) {}
  void on_alarm(const DetectorOutcome&) override {
    write_wav(path_, synthesize_melody(melody_, rate_), rate_);
  }

 private:
  std::string path_;
  Melody melody_;
  int rate_;
};

class NullSink final : public EventSink {
 public:
  void emit(const SessionEvent&) override {}
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  SessionConfig config;
  config.period_length = duration_flag("--period-min", a.period, kNanosPerMinute);
  config.speed = a.speed;
  if (a.speed < 0) throw UsageError("--speed must be >= 0");
  if (a.audio_rate < kMinAudioRateHz || a.audio_rate > kMaxAudioRateHz)
    throw UsageError("--audio-rate must be within 8000..48000");

  Melody melody = a.melody.empty() ? default_alarm_melody() : read_melody(a.melody);

  std::unique_ptr<SampleSource> source;
  Nanos trace_duration = 0;
  if (!a.trace.empty()) {
    auto reader = std::make_unique<TraceReader>(std::filesystem::path(a.trace));
    trace_duration = reader->header().duration;
    source = std::move(reader);
  } else {
    auto live = std::make_unique<LiveSource>(a.listen);
    err << "listening=" << live->address() << std::endl;
    source = std::move(live);
  }

  if (!a.sleep.empty())
    config.sleep_duration = duration_flag("--sleep-hours", a.sleep, kNanosPerHour);
  else if (trace_duration > 0)
    config.sleep_duration = trace_duration;
  try {
    validate(config);
  } catch (const ConfigInvalid& e) {
    throw UsageError(e.what());
  }

  std::ofstream log_file;
  NullSink null_sink;
  std::unique_ptr<JsonlEventWriter> writer;
  EventSink* events = &null_sink;
  if (!a.log.empty()) {
    log_file.open(a.log, std::ios::binary | std::ios::trunc);
    if (!log_file) throw Error("cannot write event log '" + a.log + "'");
    writer = std::make_unique<JsonlEventWriter>(log_file);
    events = writer.get();
  }

  std::unique_ptr<WavAlarm> wav;
  if (!a.alarm_wav.empty()) wav = std::make_unique<WavAlarm>(a.alarm_wav, melody, a.audio_rate);

  const SessionResult result = run_session(config, *source, *events, wav.get());
  const DetectorOutcome& o = result.outcome;
  auto num = [](const std::optional<double>& v) -> std::string {
    if (!v) return "none";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", *v);
    return buf;
  };
  out << "alarm=" << to_string(o.trigger) << " t=" << format_seconds(o.alarm_time)
      << " delta=" << num(o.trigger_delta) << " t_min=" << num(o.final_thresholds.t_min)
      << " t_max=" << num(o.final_thresholds.t_max) << '\n';
  return kSuccess;
}

int cmd_charts(const ChartsArgs& a, std::ostream& out) {
  std::ifstream in(a.log, std::ios::binary);
  if (!in) throw Error("cannot open event log '" + a.log + "'");
  const EventLog log = parse_event_log(in);
  const PeriodCharts charts = export_period_charts(log, a.out_dir);
  out << format_summary(charts);
  return kSuccess;
}

int cmd_melody(const MelodyArgs& a, std::ostream& out) {
  if (a.audio_rate < kMinAudioRateHz || a.audio_rate > kMaxAudioRateHz)
    throw UsageError("--audio-rate must be within 8000..48000");
  const Melody melody = a.melody.empty() ? default_alarm_melody() : read_melody(a.melody);
  const auto pcm = synthesize_melody(melody, a.audio_rate);
  write_wav(a.out, pcm, a.audio_rate);
  out << "wav=" << a.out << " frames=" << pcm.size() << " duration_ms=" << melody.total_duration_ms()
      << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Accelerometer light-sleep alarm: generate traces, run sessions, export charts",
               "lightwake"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic sleep trace CSV");
  generate->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  generate->add_option("--hours", gen.hours, "Trace length (hours, or with h/min/s suffix)")
      ->capture_default_str();
  generate->add_option("--rate-hz", gen.rate_hz, "Sample rate, 1..250 Hz")->capture_default_str();
  generate->add_option("--cycle-min", gen.cycle, "Sleep cycle length (minutes)")
      ->capture_default_str();
  generate->add_option("--burst-light", gen.burst_light, "Movement bursts/min in light sleep")
      ->capture_default_str();
  generate->add_option("--burst-deep", gen.burst_deep, "Movement bursts/min in deep sleep and REM")
      ->capture_default_str();
  generate->add_option("--noise-sigma", gen.noise_sigma, "Per-axis sensor noise (g)")
      ->capture_default_str();
  generate->add_option("--label", gen.label, "Free-text label stored in the trace");
  generate->add_option("--out", gen.out, "Output trace CSV")->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one alarm session over a trace or live stream");
  auto* trace_opt = run_cmd->add_option("--trace", run_args.trace, "Trace CSV to replay");
  auto* listen_opt =
      run_cmd->add_option("--listen", run_args.listen, "Accept one TCP client on host:port");
  trace_opt->excludes(listen_opt);
  listen_opt->excludes(trace_opt);
  run_cmd->add_option("--sleep-hours", run_args.sleep,
                      "Sleep duration (hours); defaults to the trace duration, else 8");
  run_cmd->add_option("--period-min", run_args.period, "Period length (minutes)")
      ->capture_default_str();
  run_cmd->add_option("--speed", run_args.speed, "Virtual seconds per wall second; 0 = unpaced")
      ->capture_default_str();
  run_cmd->add_option("--log", run_args.log, "Write the JSONL event log here");
  run_cmd->add_option("--alarm-wav", run_args.alarm_wav, "Write the alarm melody WAV here");
  run_cmd->add_option("--melody", run_args.melody, "Melody file, one freq_hz:duration_ms per line");
  run_cmd->add_option("--audio-rate", run_args.audio_rate, "WAV sample rate")->capture_default_str();

  ChartsArgs charts_args;
  auto* charts = app.add_subcommand("charts", "Export per-period chart CSVs from an event log");
  charts->add_option("--log", charts_args.log, "JSONL event log")->required();
  charts->add_option("--out-dir", charts_args.out_dir, "Output directory")->required();

  MelodyArgs melody_args;
  auto* melody = app.add_subcommand("melody", "Render the alarm melody to a WAV file");
  melody->add_option("--melody", melody_args.melody, "Melody file (default: built-in)");
  melody->add_option("--out", melody_args.out, "Output WAV")->required();
  melody->add_option("--audio-rate", melody_args.audio_rate, "WAV sample rate")
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*run_cmd) {
      if (run_args.trace.empty() == run_args.listen.empty())
        throw UsageError("run: exactly one of --trace or --listen is required");
      return cmd_run(run_args, out, err);
    }
    if (*charts) return cmd_charts(charts_args, out);
    if (*melody) return cmd_melody(melody_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace lightwake::cli
