#pragma once

#include <stdexcept>
#include <string>

namespace hjs {

enum class ErrorCode {
  ParseError,
  ValidationError,
  RowSumViolation,
  SignViolation,
  Reducible,
  MaximizerOnBoundary,
  NonConvergence,
  Infeasible,
  UnboundedDual,
  BoundaryControl,
  SizeGuard,
  DimensionMismatch,
  HorizonTooShort,
  SubsolutionViolated,
  IoError,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace hjs
