#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace distkit {

enum class ErrorCode {
  InvalidParameter,
  DomainError,
  Unsupported,
  UnknownFamily,
  DimensionMismatch,
  NotPositiveDefinite,
  EmptyComponents,
  DegenerateData,
  NonPositive,
  NonFinite,
  EmptyData,
  BadEdges,
  NoCharacteristicFunction,
  BadBandwidth,
  NotASimplex,
  MixedVariateForms,
  IndexOutOfRange,
  AllZeroDensity,
  EmptyComponent,
  DegenerateRow,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the
// CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace distkit
