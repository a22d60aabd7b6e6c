#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apollo {

enum class ErrorCode {
  InvalidArgument,
  NegativeDiscriminant,
  NoValidCenter,
  NotTangent,
  NotOnCircle,
  InvalidSeed,
  DeltaTooLarge,
  UnreachedNodes,
  NoInwardAngle,
  WindowOverlap,
  DegenerateFit,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Validation errors stem from bad user input; everything else is a
// computation failure.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apollo
