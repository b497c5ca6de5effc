#include "langscent/core/error.hpp"

namespace langscent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::invalid_selection: return "invalid_selection";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::provider_unavailable: return "provider_unavailable";
    case ErrorCode::quota_exceeded: return "quota_exceeded";
    case ErrorCode::degraded: return "degraded";
    case ErrorCode::undefined_metric: return "undefined_metric";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

bool is_retryable(ErrorCode code) {
  return code == ErrorCode::provider_unavailable;
}

}  // namespace langscent
