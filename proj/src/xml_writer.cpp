#include <algorithm>

#include "xbrlcore/namespaces.hpp"
#include "xbrlcore/xml.hpp"

namespace xbrlcore {

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

struct XmlWriter::Frame {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> decls;  // prefix -> uri
  std::vector<std::string> used_prefixes;
  std::vector<std::pair<std::string, std::string>> attrs;  // lexical name -> escaped value

  bool declares(const std::string& prefix) const {
    return std::any_of(decls.begin(), decls.end(), [&](const auto& d) { return d.first == prefix; });
  }
  bool claims(const std::string& prefix) const {
    return declares(prefix) || std::find(used_prefixes.begin(), used_prefixes.end(), prefix) != used_prefixes.end();
  }
};

XmlWriter::XmlWriter(std::string& out) : out_(out) {}
XmlWriter::~XmlWriter() = default;

void XmlWriter::declare_root_prefix(const std::string& prefix, const std::string& uri) {
  root_bindings_.emplace_back(prefix, uri);
}

std::optional<std::string> XmlWriter::lookup_uri(const std::string& prefix) const {
  if (prefix == "xml") return std::string(ns::kXml);
  for (auto f = frames_.rbegin(); f != frames_.rend(); ++f) {
    for (const auto& [p, u] : f->decls) {
      if (p == prefix) return u;
    }
  }
  return std::nullopt;
}

const std::string* XmlWriter::lookup_prefix(const std::string& uri, bool for_attribute) const {
  for (auto f = frames_.rbegin(); f != frames_.rend(); ++f) {
    for (const auto& [p, u] : f->decls) {
      if (u != uri || (for_attribute && p.empty())) continue;
      if (lookup_uri(p) == uri) return &p;
    }
  }
  return nullptr;
}

std::string XmlWriter::bind_prefix(const std::string& uri, std::string_view hint_view, bool for_attribute) {
  Frame& f = frames_.back();
  const std::string hint(hint_view);
  if (uri == ns::kXml) return "xml";
  if (uri.empty()) {
    if (for_attribute) return "";
    const auto current = lookup_uri("");
    if (current && !current->empty()) {
      f.decls.emplace_back("", "");
    }
    f.used_prefixes.push_back("");
    return "";
  }
  auto use = [&](const std::string& p) {
    f.used_prefixes.push_back(p);
    return p;
  };
  const bool hint_usable = !(for_attribute && hint.empty()) && hint != "xml" && hint != "xmlns";
  if (hint_usable && lookup_uri(hint) == uri) return use(hint);
  if (const auto* existing = lookup_prefix(uri, for_attribute)) return use(*existing);
  if (hint_usable && !f.claims(hint)) {
    f.decls.emplace_back(hint, uri);
    return use(hint);
  }
  std::string generated;
  do {
    generated = "ns" + std::to_string(generated_++);
  } while (f.claims(generated) || lookup_uri(generated));
  f.decls.emplace_back(generated, uri);
  return use(generated);
}

void XmlWriter::close_start_tag() {
  if (!start_open_) return;
  Frame& f = frames_.back();
  out_ += '<';
  out_ += f.tag;
  for (const auto& [p, u] : f.decls) {
    out_ += p.empty() ? " xmlns" : " xmlns:" + p;
    out_ += "=\"";
    out_ += escape_attribute(u);
    out_ += '"';
  }
  for (const auto& [name, value] : f.attrs) {
    out_ += ' ';
    out_ += name;
    out_ += "=\"";
    out_ += value;
    out_ += '"';
  }
  out_ += '>';
  start_open_ = false;
}

void XmlWriter::start_element(const QName& name, std::string_view prefix_hint) {
  close_start_tag();
  frames_.emplace_back();
  if (frames_.size() == 1) {
    for (const auto& [p, u] : root_bindings_) frames_.back().decls.emplace_back(p, u);
  }
  const std::string prefix = bind_prefix(name.namespace_uri, prefix_hint, false);
  frames_.back().tag = prefix.empty() ? name.local_name : prefix + ":" + name.local_name;
  start_open_ = true;
}

void XmlWriter::attribute(const QName& name, std::string_view value, std::string_view prefix_hint) {
  const std::string prefix = bind_prefix(name.namespace_uri, prefix_hint, true);
  frames_.back().attrs.emplace_back(prefix.empty() ? name.local_name : prefix + ":" + name.local_name,
                                    escape_attribute(value));
}

std::string XmlWriter::qname_text(const QName& name) {
  if (name.namespace_uri.empty()) {
    const auto current = lookup_uri("");
    if (current && !current->empty()) frames_.back().decls.emplace_back("", "");
    return name.local_name;
  }
  const std::string prefix = bind_prefix(name.namespace_uri, "", true);
  return prefix + ":" + name.local_name;
}

void XmlWriter::text(std::string_view text) {
  close_start_tag();
  out_ += escape_text(text);
}

void XmlWriter::end_element() {
  if (start_open_) {
    // Re-open as an empty element.
    close_start_tag();
    out_.back() = '/';
    out_ += '>';
  } else {
    out_ += "</";
    out_ += frames_.back().tag;
    out_ += '>';
  }
  frames_.pop_back();
}

void XmlWriter::element(const XmlElement& e) {
  close_start_tag();
  frames_.emplace_back();
  Frame& f = frames_.back();
  if (frames_.size() == 1) {
    for (const auto& [p, u] : root_bindings_) f.decls.emplace_back(p, u);
  }
  if (e.scope) {
    for (const auto& [p, u] : e.scope->bindings) {
      if (p == "xml" || f.declares(p)) continue;
      const auto current = lookup_uri(p);
      const bool same = current ? *current == u : u.empty();
      if (!same) f.decls.emplace_back(p, u);
    }
  }
  const std::string prefix = bind_prefix(e.name.namespace_uri, e.prefix, false);
  f.tag = prefix.empty() ? e.name.local_name : prefix + ":" + e.name.local_name;
  start_open_ = true;
  for (const auto& a : e.attributes) attribute(a.name, a.value, a.prefix);
  for (const auto& c : e.children) node(c);
  end_element();
}

void XmlWriter::node(const XmlNode& n) {
  if (const auto* e = n.element()) {
    element(*e);
  } else {
    text(n.text()->text);
  }
}

}  // namespace xbrlcore
