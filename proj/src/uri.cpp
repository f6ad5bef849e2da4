#include "xbrlcore/uri.hpp"

#include <regex>
#include <vector>

namespace xbrlcore {

namespace {

struct UriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

UriParts split(std::string_view uri) {
  // The component regex from RFC 3986 appendix B.
  static const std::regex re(R"(^(([^:/?#]+):)?(//([^/?#]*))?([^?#]*)(\?([^#]*))?(#(.*))?)");
  std::match_results<std::string_view::const_iterator> m;
  UriParts p;
  if (!std::regex_match(uri.begin(), uri.end(), m, re)) {
    p.path = std::string(uri);
    return p;
  }
  if (m[1].matched) p.scheme = m[2].str();
  if (m[3].matched) p.authority = m[4].str();
  p.path = m[5].str();
  if (m[6].matched) p.query = m[7].str();
  if (m[8].matched) p.fragment = m[9].str();
  return p;
}

std::string remove_dot_segments(std::string_view in) {
  std::string input(in);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.replace(0, 3, "/");
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0 || input == "/..") {
      input = input.size() == 3 ? std::string("/") : input.substr(3);
      const auto slash = output.rfind('/');
      output.erase(slash == std::string::npos ? 0 : slash);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      const auto next = input.find('/', input[0] == '/' ? 1 : 0);
      output += input.substr(0, next);
      input.erase(0, next == std::string::npos ? input.size() : next);
    }
  }
  return output;
}

std::string merge(const UriParts& base, const std::string& ref_path) {
  if (base.authority && base.path.empty()) return "/" + ref_path;
  const auto slash = base.path.rfind('/');
  if (slash == std::string::npos) return ref_path;
  return base.path.substr(0, slash + 1) + ref_path;
}

// A relative base may legitimately climb with leading "../" segments; keep
// them instead of letting dot removal swallow them.
std::string normalize_relative(const std::string& path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  const bool absolute = !path.empty() && path[0] == '/';
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string::npos) end = path.size();
    const std::string seg = path.substr(start, end - start);
    const bool last = end == path.size();
    if (seg == "..") {
      if (!out.empty() && out.back() != "..") {
        out.pop_back();
      } else if (!absolute) {
        out.push_back("..");
      }
      if (last) out.push_back("");
    } else if (seg == ".") {
      if (last) out.push_back("");
    } else if (!seg.empty() || last) {
      out.push_back(seg);
    }
    start = end + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) result += '/';
    result += out[i];
  }
  return result;
}

std::string recompose(const UriParts& p) {
  std::string out;
  if (p.scheme) out += *p.scheme + ":";
  if (p.authority) out += "//" + *p.authority;
  out += p.path;
  if (p.query) out += "?" + *p.query;
  if (p.fragment) out += "#" + *p.fragment;
  return out;
}

}  // namespace

std::string resolve_uri(std::string_view base_text, std::string_view reference) {
  const UriParts r = split(reference);
  const UriParts base = split(base_text);
  UriParts t;
  if (r.scheme) {
    t = r;
    t.path = remove_dot_segments(r.path);
  } else {
    if (r.authority) {
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.query = r.query;
    } else {
      if (r.path.empty()) {
        t.path = base.path;
        t.query = r.query ? r.query : base.query;
      } else {
        const std::string merged = r.path[0] == '/' ? r.path : merge(base, r.path);
        t.path = base.scheme || base.authority ? remove_dot_segments(merged) : normalize_relative(merged);
        t.query = r.query;
      }
      t.authority = base.authority;
    }
    t.scheme = base.scheme;
  }
  t.fragment = r.fragment;
  return recompose(t);
}

std::string strip_fragment(std::string_view uri) {
  const auto hash = uri.find('#');
  return std::string(uri.substr(0, hash));
}

std::optional<std::string> uri_to_relative_path(std::string_view uri) {
  const UriParts p = split(strip_fragment(uri));
  std::string path;
  if (p.scheme && *p.scheme == "file") {
    path = p.authority && !p.authority->empty() ? *p.authority + "/" + p.path : p.path;
  } else if (p.scheme) {
    path = *p.scheme + "/" + p.authority.value_or("") + (p.path.empty() || p.path[0] != '/' ? "/" : "") + p.path;
  } else {
    path = p.authority ? *p.authority + "/" + p.path : p.path;
  }
  if (p.query) path += "?" + *p.query;
  path = normalize_relative(path);
  while (!path.empty() && path[0] == '/') path.erase(0, 1);
  if (path.empty() || path == ".." || path.rfind("../", 0) == 0) return std::nullopt;
  return path;
}

}  // namespace xbrlcore
