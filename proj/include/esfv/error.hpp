#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace esfv {

enum class ErrorCode {
  NonPositiveDensity,
  NonPositivePressure,
  InvalidEntropyState,
  NonPositiveInput,
  DegenerateEigensystem,
  InvalidGrid,
  InvalidArgument,
  NonFiniteState,
  DegenerateFit,
  ConfigError,
};

const char* to_string(ErrorCode code);

/// Location of a failing cell inside a field (and the solution time).
struct CellLocation {
  int i = 0;
  int j = 0;
  double time = 0.0;
};

/// Single exception type used throughout the library. The code identifies
/// the failure class; solver errors additionally carry the offending cell.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  Error(ErrorCode code, const std::string& what, CellLocation where);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<CellLocation>& where() const noexcept { return where_; }
  /// Message without the code prefix or location suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<CellLocation> where_;
};

}  // namespace esfv
