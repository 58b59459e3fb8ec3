#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lightwake {

// Root of every error the library throws. Catching this is enough for the CLI
// to map failures onto exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// signal_core / detector contract violations.
class DegenerateSample : public Error { using Error::Error; };
class OrderViolation : public Error { using Error::Error; };
class SessionTooShort : public Error { using Error::Error; };
class InvalidThresholds : public Error { using Error::Error; };
class PhaseViolation : public Error { using Error::Error; };

// Input problems from a sample source. `line` is 1-based, 0 when unknown.
class SourceError : public Error {
 public:
  SourceError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public SourceError { using SourceError::SourceError; };
class OrderError : public SourceError { using SourceError::SourceError; };
class RangeError : public SourceError { using SourceError::SourceError; };
class ProtocolError : public SourceError { using SourceError::SourceError; };
class BindError : public Error { using Error::Error; };

class InvalidParams : public Error { using Error::Error; };
class InvalidMelody : public Error { using Error::Error; };
class MalformedLog : public Error { using Error::Error; };
class ConfigInvalid : public Error { using Error::Error; };

// Raised by the engine when its source fails mid-session. Events emitted
// before the failure have already been flushed.
class SourceFailed : public Error { using Error::Error; };

}  // namespace lightwake
