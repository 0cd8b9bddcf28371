#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

/// Process exit codes shared by the CLI and the pipeline.
enum class ExitCode : int {
  ok = 0,
  parse_error = 2,
  validation_error = 3,
  numerical_error = 4,
  invariant_violation = 5,
};

/// Malformed input syntax (JSON or .nfg).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates a semantic precondition
/// (tensor length, invalid distribution, index out of range, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent intermediate data (e.g. a nerve vertex without its facet
/// payload, or colliding labels).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver failed to reach its residual bound.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant of a built object does not hold.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExitCode exit_code_for(const std::exception& e);

}  // namespace sgc
