#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

enum class ErrorCode {
  invalid_input,
  infeasible,
  unbounded,
  budget_exceeded,
  constant_objective,
  not_applicable,
  not_converged,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; `code()` lets callers branch
// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace entropic
