#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lightwake/errors.hpp"
#include "lightwake/sources.hpp"
#include "sample_fields.hpp"

namespace lightwake {

void validate(const TraceHeader& header) {
  if (!(header.sample_rate_hz >= kMinSampleRateHz && header.sample_rate_hz <= kMaxSampleRateHz))
    throw InvalidParams("sample rate " + format_double(header.sample_rate_hz) +
                        " Hz outside the sensor's 1..250 Hz range");
  if (header.duration < 0) throw InvalidParams("negative trace duration");
}

TraceReader::TraceReader(const std::filesystem::path& path) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw ParseError("cannot open trace file '" + path.string() + "'", 0);
  in_ = std::move(file);
  read_preamble();
}

TraceReader::TraceReader(std::unique_ptr<std::istream> in) : in_(std::move(in)) {
  read_preamble();
}

void TraceReader::read_preamble() {
  std::string raw;
  while (std::getline(*in_, raw)) {
    ++line_no_;
    std::string_view line = detail::strip_cr(raw);
    if (line_no_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);  // BOM
    if (line.starts_with('#')) {
      std::string_view body = detail::trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = detail::trim(body.substr(0, eq));
      const std::string_view value = detail::trim(body.substr(eq + 1));
      if (key == "rate_hz") {
        auto rate = parse_double(value);
        if (!rate || *rate < kMinSampleRateHz || *rate > kMaxSampleRateHz)
          throw ParseError("rate_hz must be within 1..250", line_no_);
        header_.sample_rate_hz = *rate;
      } else if (key == "duration_s") {
        auto d = parse_decimal_seconds(value);
        if (!d) throw ParseError("bad duration_s '" + std::string(value) + "'", line_no_);
        header_.duration = *d;
      } else if (key == "label") {
        header_.label = std::string(value);
      }
      continue;
    }
    if (line == kTraceCsvHeader) return;
    throw ParseError("expected header '" + std::string(kTraceCsvHeader) + "'", line_no_);
  }
  throw ParseError("missing header '" + std::string(kTraceCsvHeader) + "'", line_no_);
}

std::optional<RawSample> TraceReader::next() {
  if (stopped_) return std::nullopt;
  std::string raw;
  while (std::getline(*in_, raw)) {
    ++line_no_;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty() || line.starts_with('#')) continue;

    std::array<std::string_view, 4> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      if (count == fields.size())
        throw ParseError("expected 4 fields", line_no_);
      fields[count++] = detail::trim(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != fields.size()) throw ParseError("expected 4 fields", line_no_);

    RawSample s;
    std::string message;
    switch (detail::parse_sample_fields(fields, s, message)) {
      case detail::FieldStatus::Ok:
        break;
      case detail::FieldStatus::OutOfRange:
        throw RangeError(message, line_no_);
      default:
        throw ParseError(message, line_no_);
    }
    if (last_t_ && s.t <= *last_t_)
      throw OrderError("timestamp " + format_seconds(s.t) + "s does not follow " +
                           format_seconds(*last_t_) + "s",
                       line_no_);
    last_t_ = s.t;
    return s;
  }
  if (in_->bad()) throw ParseError("read failure", line_no_);
  return std::nullopt;
}

namespace {

Trace drain(TraceReader& reader) {
  Trace trace{reader.header(), {}};
  while (auto s = reader.next()) trace.samples.push_back(*s);
  return trace;
}

}  // namespace

Trace read_trace(const std::filesystem::path& path) {
  TraceReader reader(path);
  return drain(reader);
}

Trace read_trace_text(std::string_view csv) {
  TraceReader reader(std::make_unique<std::istringstream>(std::string(csv)));
  return drain(reader);
}

void write_trace(std::ostream& out, const TraceHeader& header, std::span<const RawSample> samples) {
  out << "# rate_hz=" << format_double(header.sample_rate_hz) << '\n';
  if (header.duration > 0) out << "# duration_s=" << format_seconds(header.duration) << '\n';
  if (!header.label.empty()) out << "# label=" << header.label << '\n';
  out << kTraceCsvHeader << '\n';
  for (const auto& s : samples) {
    out << format_seconds(s.t) << ',' << format_double(s.ax) << ',' << format_double(s.ay) << ','
        << format_double(s.az) << '\n';
  }
}

void write_trace(const std::filesystem::path& path, const TraceHeader& header,
                 std::span<const RawSample> samples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write trace file '" + path.string() + "'");
  write_trace(out, header, samples);
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace lightwake
