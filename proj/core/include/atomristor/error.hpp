#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atomristor {

// Machine-readable failure categories. The CLI prints these verbatim.
enum class ErrorCode {
  invalid_argument,
  geometry,
  device_too_small,
  singular_matrix,
  config_parse,
  config_unknown_key,
  config_range,
  io,
  not_converged,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace atomristor
