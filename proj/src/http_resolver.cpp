#include "xbrlcore/http_resolver.hpp"

#include <httplib.h>

#include <regex>

namespace xbrlcore {

FetchResult HttpResolver::fetch(const std::string& uri) {
  static const std::regex re(R"(^(https?://[^/?#]+)([^#]*))", std::regex::icase);
  std::smatch m;
  if (!std::regex_search(uri, m, re)) return FetchResult::failure("not an http(s) URI");
  const std::string origin = m[1].str();
  std::string path = m[2].str();
  if (path.empty()) path = "/";

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  auto res = client.Get(path);
  if (!res) return FetchResult::failure("http error: " + httplib::to_string(res.error()));
  if (res->status != 200) return FetchResult::failure("http status " + std::to_string(res->status));
  return FetchResult::ok(std::move(res->body));
}

}  // namespace xbrlcore
