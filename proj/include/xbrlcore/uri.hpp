#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace xbrlcore {

/// RFC 3986 reference resolution (section 5.2) of `reference` against `base`.
/// A relative base is accepted and treated as a path-only URI.
std::string resolve_uri(std::string_view base, std::string_view reference);

/// `uri` without its "#fragment" part.
std::string strip_fragment(std::string_view uri);

/// Relative filesystem path for `uri` under a taxonomy root: scheme and
/// authority become leading path segments ("http://host/a.xsd" maps to
/// "http/host/a.xsd"), "file:///a/b.xsd" maps to "a/b.xsd", and a scheme-less
/// reference maps to its own path. Returns nullopt when the path would climb
/// above the root.
std::optional<std::string> uri_to_relative_path(std::string_view uri);

}  // namespace xbrlcore
