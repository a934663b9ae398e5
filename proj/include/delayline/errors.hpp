#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delayline {

enum class ErrorCode {
  ParseError,
  InvalidValue,
  Overflow,
  StageMismatch,
  ResourceLimit,
  InvalidPerturbation,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to a distinct exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delayline
