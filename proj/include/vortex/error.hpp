#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vortex {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  degenerate_point,
  collision,
  lifted_collision,
  antipodal,
  log_domain,
  zero_circulation,
  not_critical,
  config,
  io,
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an operation needs two vortices (i, j) kept apart.
/// Indices are zero-based.
class PairError : public Error {
 public:
  PairError(ErrorCode code, const std::string& what, int i, int j)
      : Error(code, what), pair_(i, j) {}
  std::pair<int, int> pair() const noexcept { return pair_; }

 private:
  std::pair<int, int> pair_;
};

}  // namespace vortex
