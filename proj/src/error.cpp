#include "cornea/error.hpp"

namespace cornea {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::bound_violation: return "BoundViolation";
    case ErrorKind::hypothesis_violation: return "HypothesisViolation";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::no_root: return "NoRoot";
    case ErrorKind::apex_not_found: return "ApexNotFound";
    case ErrorKind::degenerate_level_set: return "DegenerateLevelSet";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::io: return "IoError";
  }
  return "Error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io:
    case ErrorKind::parse:
    case ErrorKind::dimension_mismatch:
      return 1;
    case ErrorKind::apex_not_found:
    case ErrorKind::degenerate_level_set:
      return 3;
    default:
      return 2;
  }
}

}  // namespace cornea
