#pragma once

#include <string>
#include <string_view>

namespace langscent {

// Canonical form used to deduplicate sources: lowercase scheme and host,
// default port dropped, trailing slash and fragment removed, query kept
// verbatim. Idempotent. Throws Error{invalid_input} for anything that is not
// an absolute URL.
std::string normalize_url(std::string_view url);

}  // namespace langscent
