#pragma once

// Namespace-aware XML tree. This is the only XML surface the XBRL modules
// see; tokenization happens in xml.cpp and never leaks out of it.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xbrlcore/qname.hpp"

namespace xbrlcore {

/// In-scope prefix bindings of an element. The empty prefix is the default
/// namespace. Scopes are shared between an element and its descendants until
/// a descendant declares something new.
struct NamespaceScope {
  std::map<std::string, std::string> bindings;

  /// URI bound to `prefix`, or nullopt when unbound.
  std::optional<std::string> uri_for(std::string_view prefix) const;
};

struct XmlAttribute {
  QName name;
  std::string prefix;  // spelling hint only
  std::string value;
};

struct XmlText {
  std::string text;

  bool is_whitespace() const;
};

struct XmlNode;

struct XmlElement {
  QName name;
  std::string prefix;  // spelling hint only
  std::vector<XmlAttribute> attributes;
  std::vector<XmlNode> children;
  SourceLocation location;
  std::shared_ptr<const NamespaceScope> scope;

  /// Value of the attribute named `attr`, if present.
  const std::string* attribute(const QName& attr) const;
  /// Shorthand for an attribute with no namespace.
  const std::string* attribute(std::string_view local_name) const;

  /// Direct element children, in document order.
  std::vector<const XmlElement*> child_elements() const;
  std::vector<const XmlElement*> child_elements(const QName& name) const;
  const XmlElement* first_child(const QName& name) const;
  bool has_element_children() const;

  /// Concatenated direct text children.
  std::string text() const;

  /// Resolves lexical QName content such as "iso4217:USD" against this
  /// element's in-scope bindings. Unprefixed names take the default
  /// namespace. Returns nullopt for an unbound prefix or a malformed name.
  std::optional<QName> resolve_qname(std::string_view lexical) const;
};

struct XmlNode {
  std::variant<XmlElement, XmlText> value;

  const XmlElement* element() const { return std::get_if<XmlElement>(&value); }
  const XmlText* text() const { return std::get_if<XmlText>(&value); }
};

/// Structural equality: names, attributes (as a set), and children in order.
/// Prefixes, locations, and scopes are ignored, as are whitespace-only text
/// nodes that sit next to element siblings.
bool operator==(const XmlElement& a, const XmlElement& b);
bool operator==(const XmlNode& a, const XmlNode& b);
inline bool operator==(const XmlText& a, const XmlText& b) { return a.text == b.text; }

struct XmlTree {
  XmlElement root;

  friend bool operator==(const XmlTree&, const XmlTree&) = default;
};

enum class XmlErrorCode { MalformedXml, UnboundPrefix, UnsupportedEncoding };

enum class XmlErrorDetail { None, DtdForbidden, EntityForbidden };

class XmlError : public std::runtime_error {
 public:
  XmlError(XmlErrorCode code, XmlErrorDetail detail, SourceLocation location, const std::string& message);

  XmlErrorCode code() const noexcept { return code_; }
  XmlErrorDetail detail() const noexcept { return detail_; }
  SourceLocation location() const noexcept { return location_; }

 private:
  XmlErrorCode code_;
  XmlErrorDetail detail_;
  SourceLocation location_;
};

std::string_view to_string(XmlErrorCode code);

/// Parses a complete document. Throws XmlError.
XmlTree read_document(std::string_view bytes);

/// All elements named `name` in the subtree rooted at `root` (root included),
/// in document order.
std::vector<const XmlElement*> find_elements(const XmlElement& root, const QName& name);
inline std::vector<const XmlElement*> find_elements(const XmlTree& tree, const QName& name) {
  return find_elements(tree.root, name);
}

/// Serializes elements while choosing prefixes. Bindings the source document
/// had in scope are re-declared where they differ from what the writer has
/// already emitted, so QName-valued text keeps its meaning.
class XmlWriter {
 public:
  explicit XmlWriter(std::string& out);
  ~XmlWriter();

  /// Prefix the writer will use for `uri` at document level. Must be called
  /// before the first start_element.
  void declare_root_prefix(const std::string& prefix, const std::string& uri);

  void start_element(const QName& name, std::string_view prefix_hint = {});
  void attribute(const QName& name, std::string_view value, std::string_view prefix_hint = {});
  void text(std::string_view text);
  void end_element();

  /// Writes a whole subtree.
  void element(const XmlElement& element);
  void node(const XmlNode& node);

  /// Lexical "prefix:local" for `name` in the current scope, declaring a
  /// binding on the open element if needed. Only valid while a start tag is open.
  std::string qname_text(const QName& name);

 private:
  struct Frame;
  std::string bind_prefix(const std::string& uri, std::string_view hint, bool for_attribute);
  void close_start_tag();
  const std::string* lookup_prefix(const std::string& uri, bool for_attribute) const;
  std::optional<std::string> lookup_uri(const std::string& prefix) const;

  std::string& out_;
  std::vector<Frame> frames_;
  std::vector<std::pair<std::string, std::string>> root_bindings_;
  bool start_open_ = false;
  unsigned generated_ = 0;
};

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

bool is_xml_whitespace(char c);
std::string_view trim_xml_whitespace(std::string_view s);

}  // namespace xbrlcore
