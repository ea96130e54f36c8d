#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbifolder {

enum class ErrorCode {
  validation,            // malformed input, failed precondition
  cap_exceeded,          // configured resource limit hit
  invariance_violation,  // a function expected to be isomorphism-invariant is not
  model_inconsistency,   // two evaluation routes disagree, or a count is not integral
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::invariance_violation: return "invariance_violation";
    case ErrorCode::model_inconsistency: return "model_inconsistency";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorCode::validation, message) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& message)
      : Error(ErrorCode::cap_exceeded, message) {}
};

class InvarianceViolation : public Error {
 public:
  explicit InvarianceViolation(const std::string& message)
      : Error(ErrorCode::invariance_violation, message) {}
};

class ModelInconsistency : public Error {
 public:
  explicit ModelInconsistency(const std::string& message)
      : Error(ErrorCode::model_inconsistency, message) {}
};

}  // namespace orbifolder
