#ifndef RELMONAD_ERRORS_HPP
#define RELMONAD_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relmonad {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// update() evaluated with no registered state domain.
struct MissingStateDomainError : Error {
  MissingStateDomainError()
      : Error("update requires a registered finite state domain") {}
};

struct StateSpaceTooLargeError : Error {
  std::uint64_t bound;
  explicit StateSpaceTooLargeError(std::uint64_t b)
      : Error("state space bound " + std::to_string(b) +
              " exceeds the configured cap"),
        bound(b) {}
};

struct MonotonicityViolationError : Error {
  MonotonicityViolationError()
      : Error("fixpoint chain inclusion violated: functional is not monotone") {
  }
};

struct CompositionError : Error {
  using Error::Error;
};
struct SchemaMismatchError : CompositionError {
  explicit SchemaMismatchError(const std::string& rule, const std::string& why)
      : CompositionError("rule " + rule + ": schema mismatch: " + why) {}
};
struct UncheckedLeafError : CompositionError {
  explicit UncheckedLeafError(const std::string& what)
      : CompositionError("leaf without a Holds report: " + what) {}
};

struct UnsupportedConstructError : Error {
  explicit UnsupportedConstructError(const std::string& what)
      : Error("unsupported construct in basic block: " + what) {}
};

struct EmptyPatternError : Error {
  EmptyPatternError() : Error("pattern must be nonempty") {}
};

// CLI-level errors (exit code 3).
struct UsageError : Error {
  using Error::Error;
};
struct UnknownTargetError : UsageError {
  explicit UnknownTargetError(const std::string& t)
      : UsageError("unknown target: " + t) {}
};
struct InvalidParameterError : UsageError {
  explicit InvalidParameterError(const std::string& m)
      : UsageError("invalid parameter: " + m) {}
};
struct UnknownPredicateError : UsageError {
  explicit UnknownPredicateError(const std::string& p)
      : UsageError("unknown predicate: " + p) {}
};

}  // namespace relmonad

#endif  // RELMONAD_ERRORS_HPP
