#pragma once

#include <stdexcept>
#include <string>

namespace sstar {

enum class ErrorCode {
  Parse,
  Precondition,
  BudgetExceeded,
  IllegalMove,
  NotFound,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Precondition: return "precondition-violated";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::IllegalMove: return "illegal-move";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Io: return "io-error";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sstar
