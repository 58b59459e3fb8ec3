#pragma once

#include <array>
#include <string>
#include <string_view>

#include "lightwake/signal_core.hpp"
#include "lightwake/timebase.hpp"

namespace lightwake::detail {

enum class FieldStatus { Ok, BadTime, BadNumber, OutOfRange };

// Shared by the CSV reader and the live protocol so both validate alike.
inline FieldStatus parse_sample_fields(const std::array<std::string_view, 4>& fields,
                                       RawSample& out, std::string& message) {
  auto t = parse_decimal_seconds(fields[0]);
  if (!t) {
    message = "bad timestamp '" + std::string(fields[0]) + "'";
    return FieldStatus::BadTime;
  }
  double axis[3];
  for (int i = 0; i < 3; ++i) {
    auto v = parse_double(fields[i + 1]);
    if (!v) {
      message = "bad acceleration '" + std::string(fields[i + 1]) + "'";
      return FieldStatus::BadNumber;
    }
    axis[i] = *v;
  }
  out = RawSample{*t, axis[0], axis[1], axis[2]};
  if (!is_valid_sample(out)) {
    message = "acceleration outside the +/-5 g sensor range";
    return FieldStatus::OutOfRange;
  }
  return FieldStatus::Ok;
}

inline std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace lightwake::detail
