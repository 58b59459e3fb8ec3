#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lightwake/bounded_queue.hpp"
#include "lightwake/signal_core.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake {

inline constexpr double kMinSampleRateHz = 1.0;
inline constexpr double kMaxSampleRateHz = 250.0;
inline constexpr double kDefaultSampleRateHz = 4.0;

// Producer of a time-ordered RawSample stream.
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  // Next sample, or nullopt once the stream has ended. Throws a SourceError
  // subclass on bad input.
  virtual std::optional<RawSample> next() = 0;

  // Ask the source to stop producing. Later next() calls return nullopt.
  virtual void stop() {}
};

// Replays an in-memory sample vector.
class VectorSource final : public SampleSource {
 public:
  explicit VectorSource(std::vector<RawSample> samples) : samples_(std::move(samples)) {}

  std::optional<RawSample> next() override {
    if (stopped_ || pos_ >= samples_.size()) return std::nullopt;
    return samples_[pos_++];
  }
  void stop() override { stopped_ = true; }
  std::size_t consumed() const noexcept { return pos_; }

 private:
  std::vector<RawSample> samples_;
  std::size_t pos_ = 0;
  bool stopped_ = false;
};

// ---------------------------------------------------------------------------
// Trace CSV
//
//   # rate_hz=4
//   # label=night 1
//   # duration_s=28800
//   t_s,ax_g,ay_g,az_g
//   0,0.01,0.02,0.99
//   0.25,0,0,1
//
// Comment lines before the header may carry key=value metadata. t_s is
// seconds from session start, rounded half-up to whole nanoseconds.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kTraceCsvHeader = "t_s,ax_g,ay_g,az_g";

struct TraceHeader {
  double sample_rate_hz = kDefaultSampleRateHz;
  Nanos duration = 0;  // 0 when the file does not say
  std::string label;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

// Throws InvalidParams when the rate is outside the sensor's 1..250 Hz or the
// duration is negative.
void validate(const TraceHeader& header);

// Streaming reader. Validation matches the live protocol: every yielded
// sample satisfies is_valid_sample() and strictly increasing t.
class TraceReader final : public SampleSource {
 public:
  explicit TraceReader(const std::filesystem::path& path);
  explicit TraceReader(std::unique_ptr<std::istream> in);

  const TraceHeader& header() const noexcept { return header_; }
  std::optional<RawSample> next() override;
  void stop() override { stopped_ = true; }

 private:
  void read_preamble();

  std::unique_ptr<std::istream> in_;
  TraceHeader header_;
  std::size_t line_no_ = 0;
  std::optional<Nanos> last_t_;
  bool stopped_ = false;
};

struct Trace {
  TraceHeader header;
  std::vector<RawSample> samples;
};

Trace read_trace(const std::filesystem::path& path);
Trace read_trace_text(std::string_view csv);

void write_trace(std::ostream& out, const TraceHeader& header, std::span<const RawSample> samples);
void write_trace(const std::filesystem::path& path, const TraceHeader& header,
                 std::span<const RawSample> samples);

// ---------------------------------------------------------------------------
// Synthetic sleep traces
// ---------------------------------------------------------------------------

enum class ModelStage { Light, Deep, REM };

// Knobs of the synthetic sleeper. Rates are movement bursts per minute.
struct SleepModelParams {
  Nanos cycle_length = minutes(90);
  double rem_fraction = 0.20;
  double quiet_noise_sigma = 0.003;  // g
  double burst_rate_light = 0.1;
  double burst_rate_deep = 0.01;
  double burst_amplitude_min = 0.02;  // g
  double burst_amplitude_max = 0.5;   // g
  std::uint64_t rng_seed = 42;
};

// Throws InvalidParams.
void validate(const SleepModelParams& params);

// Stage schedule within each cycle, as fractions of cycle_length with
// n = 1 - rem_fraction:
//   [0, n/4) Light   [n/4, 3n/4) Deep   [3n/4, n) Light   [n, 1) REM
// REM moves at the deep rate.
ModelStage stage_at(const SleepModelParams& params, Nanos t) noexcept;

// Deterministic generator. Samples are taken at round(k * 1e9 / rate) ns
// for every k with t < header.duration.
//
// Randomness comes from std::mt19937_64 seeded with rng_seed; uniforms use
// its top 53 bits and normals use the Box-Muller transform, so the stream
// does not depend on the standard library's distribution classes.
//
// Each sample is the current posture's gravity vector (unit length) plus
// N(0, sigma) noise per axis. At every sample a burst starts with
// probability 1 - exp(-rate * dt), using the stage's rate. A burst lasts a
// uniform 1-5 s with a uniform amplitude in [min, max]; each of its samples
// adds amplitude times a random unit direction. A burst ends in a new
// posture tilted up to 30 degrees from vertical.
class SyntheticSource final : public SampleSource {
 public:
  SyntheticSource(const SleepModelParams& params, const TraceHeader& header);

  std::optional<RawSample> next() override;
  void stop() override { stopped_ = true; }

 private:
  double uniform();
  double gaussian();
  void random_direction(double& x, double& y, double& z);
  void tilt_posture();

  SleepModelParams params_;
  TraceHeader header_;
  std::mt19937_64 rng_;
  std::optional<double> spare_gaussian_;
  std::int64_t index_ = 0;
  Nanos burst_end_ = -1;
  double burst_amplitude_ = 0.0;
  double gx_ = 0.0, gy_ = 0.0, gz_ = 1.0;
  bool stopped_ = false;
};

std::vector<RawSample> generate_trace(const SleepModelParams& params, const TraceHeader& header);

// ---------------------------------------------------------------------------
// Live TCP line protocol
//
// One client connection; newline-delimited ASCII lines "t_s ax ay az". The
// server never replies. A malformed line ends the stream with ProtocolError.
// ---------------------------------------------------------------------------

class LiveSource final : public SampleSource {
 public:
  // Binds and listens on "host:port" immediately (port 0 picks a free port),
  // then accepts one client on a background thread. Throws BindError.
  explicit LiveSource(const std::string& bind_address, std::size_t queue_capacity = 4096);
  ~LiveSource() override;

  LiveSource(const LiveSource&) = delete;
  LiveSource& operator=(const LiveSource&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  std::string address() const;

  std::optional<RawSample> next() override;
  void stop() override;

 private:
  void serve();
  void shutdown_sockets();

  std::string host_;
  std::uint16_t port_ = 0;
  int listen_fd_ = -1;
  int client_fd_ = -1;
  std::mutex fd_mu_;
  std::atomic<bool> stopping_{false};
  BoundedQueue<RawSample> queue_;
  std::thread worker_;
};

// Parses one live-protocol line (without its newline). Throws ProtocolError.
RawSample parse_live_line(std::string_view line, std::size_t line_no);

}  // namespace lightwake
