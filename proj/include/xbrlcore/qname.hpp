#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace xbrlcore {

/// Expanded name: namespace URI plus local part. The prefix a document used
/// to spell the name is never part of its identity.
struct QName {
  std::string namespace_uri;
  std::string local_name;

  friend bool operator==(const QName&, const QName&) = default;
  friend auto operator<=>(const QName&, const QName&) = default;

  /// Clark notation, "{uri}local", or just "local" when the namespace is empty.
  std::string clark() const;
};

/// 1-based line and column of the construct in its source document. A
/// default-constructed location (0, 0) marks a construct with no source.
struct SourceLocation {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
  friend auto operator<=>(const SourceLocation&, const SourceLocation&) = default;

  std::string str() const;
};

}  // namespace xbrlcore

template <>
struct std::hash<xbrlcore::QName> {
  std::size_t operator()(const xbrlcore::QName& q) const noexcept {
    const std::size_t h = std::hash<std::string>{}(q.namespace_uri);
    return h ^ (std::hash<std::string>{}(q.local_name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
