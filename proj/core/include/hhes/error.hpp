#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhes {

enum class ErrorCode {
  UnknownLabel,
  DuplicateLabel,
  UnknownMode,
  ZeroNorm,
  DuplicatePort,
  InternalSetNotBinary,
  IncompleteRouting,
  NotBijective,
  BasisMismatch,
  ZeroCoincidenceMass,
  OverlappingPartitions,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception thrown by every core operation. The code identifies the
/// contract violation; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hhes
