#include "lightwake/timebase.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace lightwake {

std::optional<Nanos> parse_decimal_seconds(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;

  auto all_digits = [](std::string_view s) {
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;

  // ~292 years of nanoseconds fit in int64; anything longer is nonsense here.
  constexpr Nanos kMaxWholeSeconds = std::numeric_limits<Nanos>::max() / kNanosPerSecond - 1;
  Nanos secs = 0;
  for (char c : whole) {
    secs = secs * 10 + (c - '0');
    if (secs > kMaxWholeSeconds) return std::nullopt;
  }

  Nanos ns = 0;
  for (std::size_t i = 0; i < 9; ++i) ns = ns * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  if (frac.size() > 9 && frac[9] >= '5') ++ns;  // half-up
  return secs * kNanosPerSecond + ns;
}

std::string format_seconds(Nanos t) {
  std::string out;
  if (t < 0) {
    out.push_back('-');
    t = -t;
  }
  out += std::to_string(t / kNanosPerSecond);
  Nanos frac = t % kNanosPerSecond;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 9 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+', which CSV writers sometimes emit.
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::optional<Nanos> parse_duration(std::string_view text, Nanos default_unit) {
  struct Suffix {
    std::string_view name;
    Nanos unit;
  };
  constexpr std::array<Suffix, 5> kSuffixes{{{"min", kNanosPerMinute},
                                             {"ms", 1'000'000},
                                             {"h", kNanosPerHour},
                                             {"m", kNanosPerMinute},
                                             {"s", kNanosPerSecond}}};
  Nanos unit = default_unit;
  for (const auto& s : kSuffixes) {
    if (text.size() > s.name.size() && text.ends_with(s.name)) {
      unit = s.unit;
      text.remove_suffix(s.name.size());
      break;
    }
  }
  auto value = parse_double(text);
  if (!value || *value < 0.0) return std::nullopt;
  const double ns = std::round(*value * static_cast<double>(unit));
  if (ns > static_cast<double>(std::numeric_limits<Nanos>::max() / 2)) return std::nullopt;
  return static_cast<Nanos>(ns);
}

}  // namespace lightwake
