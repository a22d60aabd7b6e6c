#include "apollo/error.hpp"

namespace apollo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::NoValidCenter: return "NoValidCenter";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NotOnCircle: return "NotOnCircle";
    case ErrorCode::InvalidSeed: return "InvalidSeed";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::UnreachedNodes: return "UnreachedNodes";
    case ErrorCode::NoInwardAngle: return "NoInwardAngle";
    case ErrorCode::WindowOverlap: return "WindowOverlap";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSeed:
    case ErrorCode::DeltaTooLarge:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

}  // namespace apollo
