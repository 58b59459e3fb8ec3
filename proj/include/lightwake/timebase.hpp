#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lightwake {

// Session time: integer nanoseconds from session start.
using Nanos = std::int64_t;

inline constexpr Nanos kNanosPerSecond = 1'000'000'000;
inline constexpr Nanos kNanosPerMinute = 60 * kNanosPerSecond;
inline constexpr Nanos kNanosPerHour = 60 * kNanosPerMinute;

constexpr Nanos seconds(std::int64_t s) { return s * kNanosPerSecond; }
constexpr Nanos minutes(std::int64_t m) { return m * kNanosPerMinute; }
constexpr Nanos hours(std::int64_t h) { return h * kNanosPerHour; }

// Parses a non-negative decimal number of seconds ("12", "0.25", "7.") into
// nanoseconds, rounding half-up at the ninth fractional digit. Exponents,
// signs and whitespace are rejected.
std::optional<Nanos> parse_decimal_seconds(std::string_view text);

// Exact decimal rendering of a nanosecond count in seconds, trailing zeros
// trimmed: 250'000'000 -> "0.25", 3'000'000'000 -> "3".
std::string format_seconds(Nanos t);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Strict finite-double parse of the whole token.
std::optional<double> parse_double(std::string_view text);

// Durations with an optional unit suffix: "8h", "90min", "30s", "1.5".
// A bare number is interpreted in `default_unit` nanoseconds per unit.
std::optional<Nanos> parse_duration(std::string_view text, Nanos default_unit);

}  // namespace lightwake
