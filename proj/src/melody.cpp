#include "lightwake/melody.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lightwake/errors.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake {

namespace {

constexpr double kMaxToneHz = 20000.0;

void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(bytes, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::int64_t frame_at(std::int64_t elapsed_ms, int rate) {
  // round-half-up of elapsed_ms * rate / 1000 in integers
  return (elapsed_ms * rate * 2 + 1000) / 2000;
}

}  // namespace

std::int64_t Melody::total_duration_ms() const noexcept {
  std::int64_t total = 0;
  for (const auto& n : notes) total += n.duration_ms;
  return total;
}

void validate(const Melody& melody) {
  if (melody.notes.empty()) throw InvalidMelody("melody '" + melody.name + "' has no notes");
  for (std::size_t i = 0; i < melody.notes.size(); ++i) {
    const Note& n = melody.notes[i];
    if (n.duration_ms <= 0)
      throw InvalidMelody("note " + std::to_string(i + 1) + ": duration must be positive");
    if (!std::isfinite(n.frequency_hz) || n.frequency_hz < 0.0 || n.frequency_hz > kMaxToneHz)
      throw InvalidMelody("note " + std::to_string(i + 1) + ": frequency must be 0 (rest) or in (0, 20000] Hz");
  }
}

Melody default_alarm_melody() {
  return Melody{"rising-triad", {{523.25, 300}, {659.25, 300}, {783.99, 600}}};
}

Melody parse_melody(std::string_view text, std::string name) {
  Melody melody{std::move(name), {}};
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    const auto bad = [&](const std::string& why) {
      return InvalidMelody("melody line " + std::to_string(line_no) + ": " + why);
    };
    if (colon == std::string_view::npos) throw bad("expected freq_hz:duration_ms");
    auto freq = parse_double(line.substr(0, colon));
    auto dur = parse_double(line.substr(colon + 1));
    if (!freq) throw bad("bad frequency");
    if (!dur || *dur != std::floor(*dur) || *dur <= 0 || *dur > 3'600'000)
      throw bad("duration must be a positive whole number of milliseconds");
    melody.notes.push_back(Note{*freq, static_cast<int>(*dur)});
  }
  validate(melody);
  return melody;
}

Melody read_melody(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidMelody("cannot open melody file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_melody(text.str(), path.stem().string());
}

std::vector<std::int16_t> synthesize_melody(const Melody& melody, int sample_rate_hz) {
  validate(melody);
  if (sample_rate_hz < kMinAudioRateHz || sample_rate_hz > kMaxAudioRateHz)
    throw InvalidMelody("sample rate must be within 8000..48000 Hz");

  const auto amplitude = static_cast<std::int16_t>(std::lround(kSquareAmplitude * 32767.0));
  std::vector<std::int16_t> pcm(static_cast<std::size_t>(frame_at(melody.total_duration_ms(), sample_rate_hz)));

  std::int64_t elapsed_ms = 0;
  for (const Note& note : melody.notes) {
    const std::int64_t begin = frame_at(elapsed_ms, sample_rate_hz);
    elapsed_ms += note.duration_ms;
    const std::int64_t end = frame_at(elapsed_ms, sample_rate_hz);
    if (note.is_rest()) continue;  // already zero
    for (std::int64_t i = begin; i < end; ++i) {
      const double cycles = static_cast<double>(i - begin) * note.frequency_hz / sample_rate_hz;
      const double phase = cycles - std::floor(cycles);
      pcm[static_cast<std::size_t>(i)] = phase < 0.5 ? amplitude : static_cast<std::int16_t>(-amplitude);
    }
  }
  return pcm;
}

void write_wav(std::ostream& out, std::span<const std::int16_t> samples, int sample_rate_hz) {
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(out, 16);                                          // PCM fmt chunk size
  put_u16(out, 1);                                           // PCM
  put_u16(out, 1);                                           // mono
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz));  // sample rate
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz) * 2);  // byte rate
  put_u16(out, 2);                                           // block align
  put_u16(out, 16);                                          // bits per sample
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (std::int16_t s : samples) put_u16(out, static_cast<std::uint16_t>(s));
}

void write_wav(const std::filesystem::path& path, std::span<const std::int16_t> samples,
               int sample_rate_hz) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write WAV file '" + path.string() + "'");
  write_wav(out, samples, sample_rate_hz);
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace lightwake
