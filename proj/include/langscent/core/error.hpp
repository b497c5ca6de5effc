#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace langscent {

enum class ErrorCode {
  invalid_input,
  invalid_selection,
  not_found,
  provider_unavailable,
  quota_exceeded,
  degraded,
  undefined_metric,
  internal,
};

std::string_view to_string(ErrorCode code);

// Whether a caller may retry the same request unchanged.
bool is_retryable(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string raw_output = {})
      : std::runtime_error(message), code_(code), raw_output_(std::move(raw_output)) {}

  ErrorCode code() const noexcept { return code_; }

  // Unparsed provider text, set for degraded generative output.
  const std::string& raw_output() const noexcept { return raw_output_; }

 private:
  ErrorCode code_;
  std::string raw_output_;
};

}  // namespace langscent
