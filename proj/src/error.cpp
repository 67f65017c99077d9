#include "degenfv/error.hpp"

namespace degenfv {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kInconsistentB: return "inconsistent-b";
    case ErrorKind::kSpeedTooSmall: return "speed-too-small";
    case ErrorKind::kInitOutOfRange: return "init-out-of-range";
    case ErrorKind::kNanDetected: return "nan-detected";
    case ErrorKind::kNoBeta: return "no-beta";
    case ErrorKind::kNoConvergence: return "no-convergence";
    case ErrorKind::kFluxMismatch: return "flux-mismatch";
    case ErrorKind::kConfigMismatch: return "config-mismatch";
    case ErrorKind::kCflViolation: return "cfl-violation";
    case ErrorKind::kInsufficientSweep: return "insufficient-sweep";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> step)
    : std::runtime_error(to_string(kind) + ": " + what), kind_(kind), step_(step) {}

}  // namespace degenfv
