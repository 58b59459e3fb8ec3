#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lightwake {

inline constexpr int kMinAudioRateHz = 8000;
inline constexpr int kMaxAudioRateHz = 48000;
inline constexpr int kDefaultAudioRateHz = 44100;
// Fraction of int16 full scale used for the square wave.
inline constexpr double kSquareAmplitude = 0.8;

struct Note {
  double frequency_hz = 0.0;  // 0 = rest
  int duration_ms = 0;

  bool is_rest() const noexcept { return frequency_hz == 0.0; }
  friend bool operator==(const Note&, const Note&) = default;
};

struct Melody {
  std::string name;
  std::vector<Note> notes;

  std::int64_t total_duration_ms() const noexcept;
  friend bool operator==(const Melody&, const Melody&) = default;
};

// Throws InvalidMelody: empty melody, non-positive durations, or frequencies
// that are negative, non-finite or above 20 kHz.
void validate(const Melody& melody);

// Three ascending notes (C5, E5, G5), the last one held.
Melody default_alarm_melody();

// One "freq_hz:duration_ms" note per line; blank lines and '#' comments are
// ignored. Throws InvalidMelody naming the offending line.
Melody parse_melody(std::string_view text, std::string name = "custom");
Melody read_melody(const std::filesystem::path& path);

// 16-bit mono square wave, one segment per note, rests silent. Note
// boundaries fall on round(elapsed_ms * rate / 1000) so the total length is
// within half a frame of the melody duration. Throws InvalidMelody, also for
// sample rates outside 8000..48000 Hz.
std::vector<std::int16_t> synthesize_melody(const Melody& melody, int sample_rate_hz);

// Canonical 44-byte-header RIFF/WAVE, PCM 16-bit mono.
void write_wav(std::ostream& out, std::span<const std::int16_t> samples, int sample_rate_hz);
void write_wav(const std::filesystem::path& path, std::span<const std::int16_t> samples,
               int sample_rate_hz);

}  // namespace lightwake
