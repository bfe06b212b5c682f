#pragma once

#include <stdexcept>
#include <string>

namespace tfmod {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  non_finite,
  divisibility,
  hypothesis_violation,
  not_a_frame,
  no_convergence,
  parse_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` classifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tfmod
