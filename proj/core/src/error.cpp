#include "atomristor/error.hpp"

namespace atomristor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "E_INVALID_ARGUMENT";
    case ErrorCode::geometry: return "E_GEOMETRY";
    case ErrorCode::device_too_small: return "E_DEVICE_TOO_SMALL";
    case ErrorCode::singular_matrix: return "E_SINGULAR_MATRIX";
    case ErrorCode::config_parse: return "E_CONFIG_PARSE";
    case ErrorCode::config_unknown_key: return "E_CONFIG_UNKNOWN_KEY";
    case ErrorCode::config_range: return "E_CONFIG_RANGE";
    case ErrorCode::io: return "E_IO";
    case ErrorCode::not_converged: return "E_NOT_CONVERGED";
  }
  return "E_UNKNOWN";
}

}  // namespace atomristor
