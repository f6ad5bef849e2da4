#pragma once

// Typed model of an XBRL instance document. Values are immutable once the
// parser hands them out; equality is structural and ignores source locations
// and the namespace prefixes of the original document.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "xbrlcore/iso8601.hpp"
#include "xbrlcore/qname.hpp"
#include "xbrlcore/xml.hpp"

namespace xbrlcore {

enum class RefKind { Schema, Linkbase };

struct TaxonomyRef {
  std::string href;
  RefKind kind = RefKind::Schema;
  SourceLocation location;

  friend bool operator==(const TaxonomyRef& a, const TaxonomyRef& b) { return a.href == b.href && a.kind == b.kind; }
};

/// Marker for the lexical value "INF" of decimals/precision.
struct Infinite {
  friend bool operator==(Infinite, Infinite) = default;
};

using Decimals = std::variant<std::int64_t, Infinite>;
using Precision = std::variant<std::uint64_t, Infinite>;

struct Fact;

struct Item {
  QName concept_name;
  std::string context_ref;
  std::optional<std::string> unit_ref;
  std::string value;
  std::optional<Decimals> decimals;
  std::optional<Precision> precision;
  std::optional<std::string> id;
  SourceLocation location;

  friend bool operator==(const Item& a, const Item& b) {
    return a.concept_name == b.concept_name && a.context_ref == b.context_ref && a.unit_ref == b.unit_ref &&
           a.value == b.value && a.decimals == b.decimals && a.precision == b.precision && a.id == b.id;
  }
};

struct Tuple {
  QName concept_name;
  std::vector<Fact> children;
  std::optional<std::string> id;
  // A contextRef found on a tuple element. Tuples have no context; this is
  // kept only so the condition can be reported and re-emitted.
  std::optional<std::string> stray_context_ref;
  SourceLocation location;
};

struct Fact {
  std::variant<Item, Tuple> value;

  const Item* item() const { return std::get_if<Item>(&value); }
  const Tuple* tuple() const { return std::get_if<Tuple>(&value); }
  const QName& concept_name() const;
  const std::optional<std::string>& id() const;
  SourceLocation location() const;
};

bool operator==(const Tuple& a, const Tuple& b);
bool operator==(const Fact& a, const Fact& b);

struct Instant {
  DateOrDateTime when;
  friend bool operator==(const Instant&, const Instant&) = default;
};
struct Duration {
  DateOrDateTime start;
  DateOrDateTime end;
  friend bool operator==(const Duration&, const Duration&) = default;
};
struct Forever {
  friend bool operator==(Forever, Forever) = default;
};

using Period = std::variant<Instant, Duration, Forever>;

struct Entity {
  std::string scheme;
  std::string identifier;
  std::optional<XmlElement> segment;

  friend bool operator==(const Entity& a, const Entity& b) {
    return a.scheme == b.scheme && a.identifier == b.identifier && a.segment == b.segment;
  }
};

struct Context {
  std::string id;
  Entity entity;
  Period period;
  std::optional<XmlElement> scenario;  // the whole scenario element, uninterpreted
  SourceLocation location;

  friend bool operator==(const Context& a, const Context& b) {
    return a.id == b.id && a.entity == b.entity && a.period == b.period && a.scenario == b.scenario;
  }
};

struct Measures {
  std::vector<QName> measures;
  friend bool operator==(const Measures&, const Measures&) = default;
};
struct Divide {
  std::vector<QName> numerator;
  std::vector<QName> denominator;
  friend bool operator==(const Divide&, const Divide&) = default;
};

struct Unit {
  std::string id;
  std::variant<Measures, Divide> body;
  SourceLocation location;

  friend bool operator==(const Unit& a, const Unit& b) { return a.id == b.id && a.body == b.body; }
};

/// Target of a footnote locator: an href whose fragment names a fact id.
struct FactRef {
  std::string href;
  SourceLocation location;

  /// The fragment identifier after '#', empty when the href carries none or
  /// uses a pointer scheme rather than a bare id.
  std::string fact_id() const;

  friend bool operator==(const FactRef& a, const FactRef& b) { return a.href == b.href; }
};

struct Footnote {
  std::vector<XmlNode> content;
  std::string language;
  std::optional<std::string> role;
  SourceLocation location;

  friend bool operator==(const Footnote& a, const Footnote& b);
};

struct FootnoteArc {
  std::string from;
  std::string to;
  std::string arcrole;
  SourceLocation location;

  friend bool operator==(const FootnoteArc& a, const FootnoteArc& b) {
    return a.from == b.from && a.to == b.to && a.arcrole == b.arcrole;
  }
};

/// An XLink extended link associating facts with footnote resources. XLink
/// labels need not be unique, so each label maps to every participant that
/// carries it.
struct FootnoteLink {
  std::string role;
  std::map<std::string, std::vector<FactRef>> locators;
  std::map<std::string, std::vector<Footnote>> footnotes;
  std::vector<FootnoteArc> arcs;
  SourceLocation location;

  bool has_label(const std::string& label) const { return locators.count(label) || footnotes.count(label); }

  friend bool operator==(const FootnoteLink& a, const FootnoteLink& b) {
    return a.role == b.role && a.locators == b.locators && a.footnotes == b.footnotes && a.arcs == b.arcs;
  }
};

struct Instance {
  std::vector<TaxonomyRef> schema_refs;
  std::vector<TaxonomyRef> linkbase_refs;
  std::map<std::string, Context> contexts;
  std::map<std::string, Unit> units;
  std::vector<Fact> facts;
  std::vector<FootnoteLink> footnote_links;
  SourceLocation location;
  // Prefixes the source document bound at its root; a spelling preference
  // for serialization, not part of equality.
  std::map<std::string, std::string> prefix_hints;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.schema_refs == b.schema_refs && a.linkbase_refs == b.linkbase_refs && a.contexts == b.contexts &&
           a.units == b.units && a.facts == b.facts && a.footnote_links == b.footnote_links;
  }
};

enum class ModelErrorCode { UnresolvedContextRef, UnresolvedUnitRef };

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ModelErrorCode code() const noexcept { return code_; }

 private:
  ModelErrorCode code_;
};

/// Items plus tuples, nested facts included.
std::size_t fact_count(const Instance& instance);
std::size_t tuple_count(const Instance& instance);

/// Every item once, depth-first through tuples, in document order.
std::vector<std::reference_wrapper<const Item>> iter_items(const Instance& instance);

/// Visits every fact depth-first; `depth` is 1 for top-level facts.
void walk_facts(const Instance& instance, const std::function<void(const Fact&, std::size_t depth)>& visit);

/// Throws ModelError(UnresolvedContextRef).
const Context& resolve_context(const Instance& instance, const Item& item);

/// nullptr when the item has no unitRef. Throws ModelError(UnresolvedUnitRef).
const Unit* resolve_unit(const Instance& instance, const Item& item);

}  // namespace xbrlcore
