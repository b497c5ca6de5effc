#include "langscent/core/url.hpp"

#include <algorithm>
#include <cctype>

#include "langscent/core/error.hpp"

namespace langscent {

namespace {

[[noreturn]] void reject(std::string_view url, std::string_view why) {
  throw Error(ErrorCode::invalid_input, "invalid url '" + std::string(url) + "': " + std::string(why));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view default_port(std::string_view scheme) {
  if (scheme == "http" || scheme == "ws") return "80";
  if (scheme == "https" || scheme == "wss") return "443";
  if (scheme == "ftp") return "21";
  return {};
}

}  // namespace

std::string normalize_url(std::string_view url) {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) reject(url, "missing scheme");
  const auto scheme_raw = url.substr(0, sep);
  if (!std::isalpha(static_cast<unsigned char>(scheme_raw.front()))) reject(url, "bad scheme");
  for (char c : scheme_raw) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '+' && c != '-' && c != '.') reject(url, "bad scheme");
  }
  for (char c : url) {
    const auto uc = static_cast<unsigned char>(c);
    if (uc <= 0x20 || uc == 0x7F) reject(url, "whitespace or control character");
  }
  const std::string scheme = ascii_lower(scheme_raw);

  auto rest = url.substr(sep + 3);
  if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);

  const auto authority_end = rest.find_first_of("/?");
  auto authority = rest.substr(0, authority_end);
  auto tail = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

  std::string userinfo;
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = std::string(authority.substr(0, at + 1));
    authority = authority.substr(at + 1);
  }

  std::string_view host = authority;
  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) reject(url, "unterminated IPv6 literal");
    host = authority.substr(0, close + 1);
    const auto after = authority.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') reject(url, "garbage after IPv6 literal");
      port = after.substr(1);
    }
  } else if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    port = authority.substr(colon + 1);
  }
  if (host.empty()) reject(url, "empty host");
  if (!port.empty() && !std::all_of(port.begin(), port.end(),
                                    [](unsigned char c) { return std::isdigit(c) != 0; })) {
    reject(url, "non-numeric port");
  }
  if (!port.empty() && port.size() > 5) reject(url, "port out of range");
  if (authority.size() > host.size() && port.empty()) reject(url, "empty port");

  std::string out = scheme + "://" + userinfo + ascii_lower(host);
  // Leading zeros would make "0443" escape default-port stripping and break idempotence.
  while (port.size() > 1 && port.front() == '0') port.remove_prefix(1);
  if (!port.empty() && port != default_port(scheme)) out += ":" + std::string(port);

  const auto q = tail.find('?');
  auto path = tail.substr(0, q);
  const auto query = q == std::string_view::npos ? std::string_view{} : tail.substr(q);
  while (!path.empty() && path.back() == '/') path.remove_suffix(1);
  out += path;
  out += query;
  return out;
}

}  // namespace langscent
