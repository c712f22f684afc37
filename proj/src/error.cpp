#include "esfv/error.hpp"

namespace esfv {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::NonPositivePressure: return "NonPositivePressure";
    case ErrorCode::InvalidEntropyState: return "InvalidEntropyState";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::DegenerateEigensystem: return "DegenerateEigensystem";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

Error::Error(ErrorCode code, const std::string& what, CellLocation where)
    : std::runtime_error(std::string(to_string(code)) + ": " + what + " at cell (" +
                         std::to_string(where.i) + ", " + std::to_string(where.j) +
                         "), t = " + std::to_string(where.time)),
      code_(code),
      detail_(what),
      where_(where) {}

}  // namespace esfv
