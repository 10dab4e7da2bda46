#include "hhes/error.hpp"

namespace hhes {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownMode: return "UnknownMode";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::DuplicatePort: return "DuplicatePort";
    case ErrorCode::InternalSetNotBinary: return "InternalSetNotBinary";
    case ErrorCode::IncompleteRouting: return "IncompleteRouting";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::ZeroCoincidenceMass: return "ZeroCoincidenceMass";
    case ErrorCode::OverlappingPartitions: return "OverlappingPartitions";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hhes
