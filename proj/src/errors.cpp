#include "delayline/errors.hpp"

namespace delayline {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::StageMismatch: return "StageMismatch";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace delayline
