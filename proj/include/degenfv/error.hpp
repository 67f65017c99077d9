#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace degenfv {

enum class ErrorKind {
  kInvalidSpec,
  kInconsistentB,
  kSpeedTooSmall,
  kInitOutOfRange,
  kNanDetected,
  kNoBeta,
  kNoConvergence,
  kFluxMismatch,
  kConfigMismatch,
  kCflViolation,
  kInsufficientSweep,
  kConfig,
  kIo,
};

std::string to_string(ErrorKind kind);

/// Every failure raised by the library. `step()` is set when the error
/// happened while advancing a time-dependent run.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> step = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> step_;
};

}  // namespace degenfv
