#include "tfmod/error.hpp"

namespace tfmod {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::divisibility: return "divisibility";
    case ErrorCode::hypothesis_violation: return "hypothesis_violation";
    case ErrorCode::not_a_frame: return "not_a_frame";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace tfmod
