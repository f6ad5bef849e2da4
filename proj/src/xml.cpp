#include "xbrlcore/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>

#include "xbrlcore/namespaces.hpp"

namespace xbrlcore {

std::string QName::clark() const {
  if (namespace_uri.empty()) return local_name;
  return "{" + namespace_uri + "}" + local_name;
}

std::string SourceLocation::str() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

std::optional<std::string> NamespaceScope::uri_for(std::string_view prefix) const {
  if (prefix == "xml") return std::string(ns::kXml);
  auto it = bindings.find(std::string(prefix));
  if (it == bindings.end()) return std::nullopt;
  if (it->second.empty()) return std::nullopt;  // xmlns="" undeclares the default
  return it->second;
}

bool is_xml_whitespace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim_xml_whitespace(std::string_view s) {
  while (!s.empty() && is_xml_whitespace(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_xml_whitespace(s.back())) s.remove_suffix(1);
  return s;
}

bool XmlText::is_whitespace() const {
  return std::all_of(text.begin(), text.end(), is_xml_whitespace);
}

const std::string* XmlElement::attribute(const QName& attr) const {
  for (const auto& a : attributes) {
    if (a.name == attr) return &a.value;
  }
  return nullptr;
}

const std::string* XmlElement::attribute(std::string_view local_name) const {
  for (const auto& a : attributes) {
    if (a.name.namespace_uri.empty() && a.name.local_name == local_name) return &a.value;
  }
  return nullptr;
}

std::vector<const XmlElement*> XmlElement::child_elements() const {
  std::vector<const XmlElement*> out;
  for (const auto& c : children) {
    if (const auto* e = c.element()) out.push_back(e);
  }
  return out;
}

std::vector<const XmlElement*> XmlElement::child_elements(const QName& name) const {
  std::vector<const XmlElement*> out;
  for (const auto& c : children) {
    if (const auto* e = c.element(); e && e->name == name) out.push_back(e);
  }
  return out;
}

const XmlElement* XmlElement::first_child(const QName& name) const {
  for (const auto& c : children) {
    if (const auto* e = c.element(); e && e->name == name) return e;
  }
  return nullptr;
}

bool XmlElement::has_element_children() const {
  return std::any_of(children.begin(), children.end(), [](const XmlNode& n) { return n.element() != nullptr; });
}

std::string XmlElement::text() const {
  std::string out;
  for (const auto& c : children) {
    if (const auto* t = c.text()) out += t->text;
  }
  return out;
}

namespace {

bool is_ncname(std::string_view s) {
  if (s.empty()) return false;
  auto start_ok = [](unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; };
  auto rest_ok = [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80; };
  if (!start_ok(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return rest_ok(static_cast<unsigned char>(c)); });
}

}  // namespace

std::optional<QName> XmlElement::resolve_qname(std::string_view lexical) const {
  lexical = trim_xml_whitespace(lexical);
  const auto colon = lexical.find(':');
  std::string_view prefix;
  std::string_view local = lexical;
  if (colon != std::string_view::npos) {
    prefix = lexical.substr(0, colon);
    local = lexical.substr(colon + 1);
    if (!is_ncname(prefix)) return std::nullopt;
  }
  if (!is_ncname(local)) return std::nullopt;
  std::optional<std::string> uri;
  if (scope) uri = scope->uri_for(prefix);
  if (!uri) {
    if (!prefix.empty()) return std::nullopt;
    uri = std::string();
  }
  return QName{std::move(*uri), std::string(local)};
}

namespace {

// Children with whitespace-only text dropped when the parent also has
// element children.
std::vector<const XmlNode*> significant_children(const XmlElement& e) {
  const bool mixed = e.has_element_children();
  std::vector<const XmlNode*> out;
  for (const auto& c : e.children) {
    if (const auto* t = c.text(); t && mixed && t->is_whitespace()) continue;
    out.push_back(&c);
  }
  return out;
}

}  // namespace

bool operator==(const XmlElement& a, const XmlElement& b) {
  if (a.name != b.name || a.attributes.size() != b.attributes.size()) return false;
  for (const auto& attr : a.attributes) {
    const auto* other = b.attribute(attr.name);
    if (!other || *other != attr.value) return false;
  }
  const auto ca = significant_children(a);
  const auto cb = significant_children(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!(*ca[i] == *cb[i])) return false;
  }
  return true;
}

bool operator==(const XmlNode& a, const XmlNode& b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto* ea = a.element()) return *ea == *b.element();
  return *a.text() == *b.text();
}

XmlError::XmlError(XmlErrorCode code, XmlErrorDetail detail, SourceLocation location, const std::string& message)
    : std::runtime_error(message), code_(code), detail_(detail), location_(location) {}

std::string_view to_string(XmlErrorCode code) {
  switch (code) {
    case XmlErrorCode::MalformedXml: return "MalformedXml";
    case XmlErrorCode::UnboundPrefix: return "UnboundPrefix";
    case XmlErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
  }
  return "MalformedXml";
}

namespace {

constexpr char kNsSeparator = '\x1F';

struct ExpatDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

class TreeBuilder {
 public:
  explicit TreeBuilder(XML_Parser parser) : parser_(parser) {
    scopes_.push_back(std::make_shared<NamespaceScope>());
  }

  static void on_start(void* self, const XML_Char* name, const XML_Char** atts) {
    static_cast<TreeBuilder*>(self)->start(name, atts);
  }
  static void on_end(void* self, const XML_Char*) { static_cast<TreeBuilder*>(self)->end(); }
  static void on_chars(void* self, const XML_Char* s, int len) {
    static_cast<TreeBuilder*>(self)->chars(std::string_view(s, static_cast<std::size_t>(len)));
  }
  static void on_ns_start(void* self, const XML_Char* prefix, const XML_Char* uri) {
    auto* b = static_cast<TreeBuilder*>(self);
    b->pending_.emplace_back(prefix ? prefix : "", uri ? uri : "");
  }
  static void on_doctype(void* self, const XML_Char*, const XML_Char*, const XML_Char*, int) {
    auto* b = static_cast<TreeBuilder*>(self);
    b->forbidden_ = XmlErrorDetail::DtdForbidden;
    b->forbidden_at_ = b->here();
    XML_StopParser(b->parser_, XML_FALSE);
  }
  static void on_entity_decl(void* self, const XML_Char*, int, const XML_Char*, int, const XML_Char*,
                             const XML_Char*, const XML_Char*, const XML_Char*) {
    auto* b = static_cast<TreeBuilder*>(self);
    b->forbidden_ = XmlErrorDetail::EntityForbidden;
    b->forbidden_at_ = b->here();
    XML_StopParser(b->parser_, XML_FALSE);
  }

  XmlErrorDetail forbidden() const { return forbidden_; }
  SourceLocation forbidden_at() const { return forbidden_at_; }

  XmlElement take_root() { return std::move(*root_); }
  bool has_root() const { return root_ != nullptr; }

  SourceLocation here() const {
    return {static_cast<std::uint32_t>(XML_GetCurrentLineNumber(parser_)),
            static_cast<std::uint32_t>(XML_GetCurrentColumnNumber(parser_) + 1)};
  }

 private:
  static void split_name(std::string_view raw, QName& name, std::string& prefix) {
    const auto first = raw.find(kNsSeparator);
    if (first == std::string_view::npos) {
      name.namespace_uri.clear();
      name.local_name = std::string(raw);
      prefix.clear();
      return;
    }
    name.namespace_uri = std::string(raw.substr(0, first));
    const auto second = raw.find(kNsSeparator, first + 1);
    if (second == std::string_view::npos) {
      name.local_name = std::string(raw.substr(first + 1));
      prefix.clear();
    } else {
      name.local_name = std::string(raw.substr(first + 1, second - first - 1));
      prefix = std::string(raw.substr(second + 1));
    }
  }

  void start(const XML_Char* raw, const XML_Char** atts) {
    XmlElement e;
    split_name(raw, e.name, e.prefix);
    e.location = here();
    if (pending_.empty()) {
      e.scope = scopes_.back();
    } else {
      auto scope = std::make_shared<NamespaceScope>(*scopes_.back());
      for (auto& [p, u] : pending_) scope->bindings[p] = u;
      pending_.clear();
      e.scope = scope;
    }
    for (int i = 0; atts[i]; i += 2) {
      XmlAttribute a;
      split_name(atts[i], a.name, a.prefix);
      a.value = atts[i + 1];
      e.attributes.push_back(std::move(a));
    }
    scopes_.push_back(e.scope);
    stack_.push_back(std::move(e));
  }

  void end() {
    XmlElement done = std::move(stack_.back());
    stack_.pop_back();
    scopes_.pop_back();
    if (stack_.empty()) {
      root_ = std::make_unique<XmlElement>(std::move(done));
    } else {
      stack_.back().children.push_back(XmlNode{std::move(done)});
    }
  }

  void chars(std::string_view s) {
    if (stack_.empty()) return;
    auto& kids = stack_.back().children;
    if (!kids.empty()) {
      if (auto* t = std::get_if<XmlText>(&kids.back().value)) {
        t->text.append(s);
        return;
      }
    }
    kids.push_back(XmlNode{XmlText{std::string(s)}});
  }

  XML_Parser parser_;
  std::vector<XmlElement> stack_;
  std::vector<std::shared_ptr<const NamespaceScope>> scopes_;
  std::vector<std::pair<std::string, std::string>> pending_;
  std::unique_ptr<XmlElement> root_;
  XmlErrorDetail forbidden_ = XmlErrorDetail::None;
  SourceLocation forbidden_at_;
};

XmlErrorCode classify(XML_Error err) {
  switch (err) {
    case XML_ERROR_UNBOUND_PREFIX: return XmlErrorCode::UnboundPrefix;
    case XML_ERROR_UNKNOWN_ENCODING:
    case XML_ERROR_INCORRECT_ENCODING: return XmlErrorCode::UnsupportedEncoding;
    default: return XmlErrorCode::MalformedXml;
  }
}

}  // namespace

XmlTree read_document(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ExpatDeleter> parser(XML_ParserCreateNS(nullptr, kNsSeparator));
  if (!parser) throw std::bad_alloc();
  XML_Parser p = parser.get();
  XML_SetReturnNSTriplet(p, 1);
  TreeBuilder builder(p);
  XML_SetUserData(p, &builder);
  XML_SetElementHandler(p, &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(p, &TreeBuilder::on_chars);
  XML_SetStartNamespaceDeclHandler(p, &TreeBuilder::on_ns_start);
  XML_SetStartDoctypeDeclHandler(p, &TreeBuilder::on_doctype);
  XML_SetEntityDeclHandler(p, &TreeBuilder::on_entity_decl);
  XML_SetParamEntityParsing(p, XML_PARAM_ENTITY_PARSING_NEVER);

  // Feed in bounded chunks; expat takes an int length.
  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  XML_Status status = XML_STATUS_OK;
  do {
    const std::size_t n = std::min(kChunk, bytes.size() - offset);
    const bool last = offset + n == bytes.size();
    status = XML_Parse(p, bytes.data() + offset, static_cast<int>(n), last ? XML_TRUE : XML_FALSE);
    offset += n;
  } while (status == XML_STATUS_OK && offset < bytes.size());

  if (builder.forbidden() != XmlErrorDetail::None) {
    const char* what = builder.forbidden() == XmlErrorDetail::DtdForbidden ? "document type declarations are not accepted"
                                                                          : "entity declarations are not accepted";
    throw XmlError(XmlErrorCode::MalformedXml, builder.forbidden(), builder.forbidden_at(), what);
  }
  if (status != XML_STATUS_OK) {
    const XML_Error err = XML_GetErrorCode(p);
    const SourceLocation loc{static_cast<std::uint32_t>(XML_GetCurrentLineNumber(p)),
                             static_cast<std::uint32_t>(XML_GetCurrentColumnNumber(p) + 1)};
    throw XmlError(classify(err), XmlErrorDetail::None, loc,
                   std::string(XML_ErrorString(err)) + " at " + loc.str());
  }
  if (!builder.has_root()) {
    throw XmlError(XmlErrorCode::MalformedXml, XmlErrorDetail::None, {}, "no root element");
  }
  return XmlTree{builder.take_root()};
}

namespace {

void collect(const XmlElement& e, const QName& name, std::vector<const XmlElement*>& out) {
  if (e.name == name) out.push_back(&e);
  for (const auto& c : e.children) {
    if (const auto* child = c.element()) collect(*child, name, out);
  }
}

}  // namespace

std::vector<const XmlElement*> find_elements(const XmlElement& root, const QName& name) {
  std::vector<const XmlElement*> out;
  collect(root, name, out);
  return out;
}

}  // namespace xbrlcore
