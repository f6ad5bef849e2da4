#pragma once

#include <chrono>

#include "xbrlcore/dts.hpp"

namespace xbrlcore {

/// Read-only GET fetcher for http:// and https:// URIs. Other schemes fail.
/// Only constructed when a caller opts into network access.
class HttpResolver : public Resolver {
 public:
  explicit HttpResolver(std::chrono::seconds timeout = std::chrono::seconds(30)) : timeout_(timeout) {}
  FetchResult fetch(const std::string& uri) override;

 private:
  std::chrono::seconds timeout_;
};

}  // namespace xbrlcore
