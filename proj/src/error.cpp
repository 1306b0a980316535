#include "entropic/error.hpp"

namespace entropic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::unbounded: return "unbounded";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::constant_objective: return "constant_objective";
    case ErrorCode::not_applicable: return "not_applicable";
    case ErrorCode::not_converged: return "not_converged";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace entropic
