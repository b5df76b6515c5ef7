#pragma once

#include <stdexcept>
#include <string>

namespace mfd {

/// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorKind {
  Validation,   // malformed or inconsistent input
  Capacity,     // input is valid but exceeds an enumeration bound
  Unsupported,  // valid input for which the quantity is not defined here
};

/// Every library failure carries a module-qualified code such as
/// "finite_forms.InvalidQForm" plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error validation_error(std::string code, const std::string& message) {
  return Error(ErrorKind::Validation, std::move(code), message);
}

inline Error capacity_error(std::string code, const std::string& message) {
  return Error(ErrorKind::Capacity, std::move(code), message);
}

inline Error unsupported_error(std::string code, const std::string& message) {
  return Error(ErrorKind::Unsupported, std::move(code), message);
}

}  // namespace mfd
