#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umbilic {

// Base class for all domain errors. `code()` is a stable machine-parseable
// identifier used by the CLI diagnostic line.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& msg)
      : Error("parse", msg + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

struct WrongSignError : Error {
  explicit WrongSignError(const std::string& msg) : Error("wrong-sign", msg) {}
};

struct NotInOverlapError : Error {
  explicit NotInOverlapError(const std::string& msg) : Error("not-in-overlap", msg) {}
};

struct DegenerateError : Error {
  explicit DegenerateError(const std::string& msg) : Error("degenerate", msg) {}
};

struct AtAsymptoteError : Error {
  explicit AtAsymptoteError(const std::string& msg) : Error("at-asymptote", msg) {}
};

struct BeyondBlowupTimeError : Error {
  explicit BeyondBlowupTimeError(const std::string& msg) : Error("beyond-blowup-time", msg) {}
};

struct OutOfRangeError : Error {
  explicit OutOfRangeError(const std::string& msg) : Error("out-of-range", msg) {}
};

struct DegreeTooLowError : Error {
  explicit DegreeTooLowError(const std::string& msg) : Error("degree-too-low", msg) {}
};

struct NoEventError : Error {
  explicit NoEventError(const std::string& msg) : Error("no-event", msg) {}
};

struct NoStraddleError : Error {
  explicit NoStraddleError(const std::string& msg) : Error("no-straddle", msg) {}
};

struct LeftAttractingRegionError : Error {
  explicit LeftAttractingRegionError(const std::string& msg)
      : Error("left-attracting-region", msg) {}
};

struct InconsistentCountError : Error {
  explicit InconsistentCountError(const std::string& msg)
      : Error("inconsistent-count", msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

}  // namespace umbilic
