#pragma once

#include <stdexcept>
#include <string>

namespace cornea {

enum class ErrorKind {
  domain,
  bound_violation,
  hypothesis_violation,
  no_convergence,
  no_root,
  apex_not_found,
  degenerate_level_set,
  parse,
  dimension_mismatch,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Process exit code for a failure of the given kind: 1 for I/O and parse
/// failures, 2 for numeric-domain failures, 3 for degenerate input data.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CORNEA_DEFINE_ERROR(Name, kind_value)              \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& what)                 \
        : Error(ErrorKind::kind_value, what) {}            \
  };

CORNEA_DEFINE_ERROR(DomainError, domain)
CORNEA_DEFINE_ERROR(BoundViolation, bound_violation)
CORNEA_DEFINE_ERROR(HypothesisViolation, hypothesis_violation)
CORNEA_DEFINE_ERROR(NoConvergence, no_convergence)
CORNEA_DEFINE_ERROR(NoRoot, no_root)
CORNEA_DEFINE_ERROR(ApexNotFound, apex_not_found)
CORNEA_DEFINE_ERROR(DegenerateLevelSet, degenerate_level_set)
CORNEA_DEFINE_ERROR(IoError, io)

#undef CORNEA_DEFINE_ERROR

/// Malformed mesh text; carries the 1-based line and column of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column,
             ErrorKind kind = ErrorKind::parse)
      : Error(kind, what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A row whose length disagrees with the header's column count.
class DimensionMismatch : public ParseError {
 public:
  DimensionMismatch(const std::string& what, std::size_t line,
                    std::size_t column)
      : ParseError(what, line, column, ErrorKind::dimension_mismatch) {}
};

}  // namespace cornea
