#include "xbrlcore/parser.hpp"

#include <charconv>

#include "xbrlcore/namespaces.hpp"

namespace xbrlcore {

std::string_view to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::NotAnXbrlRoot: return "NotAnXbrlRoot";
    case ParseErrorCode::DuplicateContextId: return "DuplicateContextId";
    case ParseErrorCode::DuplicateUnitId: return "DuplicateUnitId";
    case ParseErrorCode::MissingContextRef: return "MissingContextRef";
    case ParseErrorCode::TupleDepthExceeded: return "TupleDepthExceeded";
    case ParseErrorCode::InvalidPeriodShape: return "InvalidPeriodShape";
    case ParseErrorCode::InvalidIso8601: return "InvalidIso8601";
    case ParseErrorCode::StartAfterEnd: return "StartAfterEnd";
    case ParseErrorCode::EmptyUnit: return "EmptyUnit";
    case ParseErrorCode::MalformedDivide: return "MalformedDivide";
    case ParseErrorCode::UnboundPrefix: return "UnboundPrefix";
    case ParseErrorCode::InvalidEntity: return "InvalidEntity";
    case ParseErrorCode::InvalidAccuracy: return "InvalidAccuracy";
    case ParseErrorCode::InvalidTaxonomyRef: return "InvalidTaxonomyRef";
    case ParseErrorCode::InvalidFootnoteLink: return "InvalidFootnoteLink";
    case ParseErrorCode::EmptyScenario: return "EmptyScenario";
    case ParseErrorCode::UnexpectedElement: return "UnexpectedElement";
    case ParseErrorCode::MissingId: return "MissingId";
    case ParseErrorCode::InvalidOptions: return "InvalidOptions";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrorCode code, SourceLocation location, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " at " + location.str() + ": " + message),
      code_(code),
      location_(location) {}

namespace {

QName xbrli(std::string_view local) { return {std::string(ns::kInstance), std::string(local)}; }
QName link(std::string_view local) { return {std::string(ns::kLinkbase), std::string(local)}; }
QName xlink(std::string_view local) { return {std::string(ns::kXLink), std::string(local)}; }

[[noreturn]] void fail(ParseErrorCode code, const XmlElement& at, const std::string& message) {
  throw ParseError(code, at.location, message);
}

std::string required_id(const XmlElement& e) {
  const auto* id = e.attribute("id");
  if (!id || trim_xml_whitespace(*id).empty()) fail(ParseErrorCode::MissingId, e, e.name.local_name + " without id");
  return std::string(trim_xml_whitespace(*id));
}

DateOrDateTime parse_date_child(const XmlElement& e) {
  const std::string raw = e.text();
  const auto text = trim_xml_whitespace(raw);
  auto value = parse_iso8601(text);
  if (!value) {
    fail(ParseErrorCode::InvalidIso8601, e, "'" + std::string(text) + "' is not an ISO 8601 date or date-time");
  }
  return std::move(*value);
}

std::vector<QName> parse_measures(const XmlElement& parent, ParseErrorCode empty_code) {
  std::vector<QName> out;
  for (const auto* child : parent.child_elements()) {
    if (child->name != xbrli("measure")) {
      fail(ParseErrorCode::UnexpectedElement, *child, "unexpected " + child->name.clark() + " in unit");
    }
    const std::string text(trim_xml_whitespace(child->text()));
    auto qname = child->resolve_qname(text);
    if (!qname) fail(ParseErrorCode::UnboundPrefix, *child, "measure '" + text + "' does not resolve to a QName");
    out.push_back(std::move(*qname));
  }
  if (out.empty()) fail(empty_code, parent, "no measures in " + parent.name.local_name);
  return out;
}

std::optional<Decimals> parse_decimals(const XmlElement& e) {
  const auto* raw = e.attribute("decimals");
  if (!raw) return std::nullopt;
  const auto text = trim_xml_whitespace(*raw);
  if (text == "INF") return Decimals{Infinite{}};
  std::int64_t v = 0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ParseErrorCode::InvalidAccuracy, e, "decimals '" + std::string(text) + "' is not an integer or INF");
  }
  return Decimals{v};
}

std::optional<Precision> parse_precision(const XmlElement& e) {
  const auto* raw = e.attribute("precision");
  if (!raw) return std::nullopt;
  const auto text = trim_xml_whitespace(*raw);
  if (text == "INF") return Precision{Infinite{}};
  std::uint64_t v = 0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
    fail(ParseErrorCode::InvalidAccuracy, e, "precision '" + std::string(text) + "' is not a positive integer or INF");
  }
  return Precision{v};
}

class InstanceParser {
 public:
  explicit InstanceParser(const ParseOptions& options) : options_(options) {}

  ParseOutcome run(const XmlElement& root) {
    if (root.name != xbrli("xbrl")) {
      fail(ParseErrorCode::NotAnXbrlRoot, root, "root element is " + root.name.clark());
    }
    if (options_.max_tuple_depth < 1) fail(ParseErrorCode::InvalidOptions, root, "max_tuple_depth must be >= 1");
    Instance& inst = outcome_.instance;
    inst.location = root.location;
    if (root.scope) {
      for (const auto& [prefix, uri] : root.scope->bindings) {
        if (!prefix.empty() && !uri.empty()) inst.prefix_hints[prefix] = uri;
      }
    }
    for (const auto* child : root.child_elements()) {
      const auto& name = child->name;
      if (name == link("schemaRef")) {
        inst.schema_refs.push_back(taxonomy_ref(*child, RefKind::Schema));
      } else if (name == link("linkbaseRef")) {
        inst.linkbase_refs.push_back(taxonomy_ref(*child, RefKind::Linkbase));
      } else if (name == link("footnoteLink")) {
        inst.footnote_links.push_back(footnote_link(*child));
      } else if (name == link("roleRef") || name == link("arcroleRef")) {
        // Role declarations carry no instance data.
      } else if (name == xbrli("context")) {
        context(*child);
      } else if (name == xbrli("unit")) {
        Unit u = parse_unit(*child);
        if (inst.units.count(u.id)) fail(ParseErrorCode::DuplicateUnitId, *child, "duplicate unit id '" + u.id + "'");
        inst.units.emplace(u.id, std::move(u));
      } else if (name == xbrli("xbrl")) {
        // Nested instance; find_instances reports it.
      } else if (name.namespace_uri == ns::kInstance || name.namespace_uri == ns::kLinkbase) {
        fail(ParseErrorCode::UnexpectedElement, *child, "unexpected " + name.clark() + " in instance");
      } else if (auto f = fact(*child, 1)) {
        inst.facts.push_back(std::move(*f));
      }
    }
    return std::move(outcome_);
  }

 private:
  bool lenient() const { return options_.mode == ParseMode::Lenient; }

  void recover(std::string code, Severity severity, const XmlElement& at, std::string message, std::string subject) {
    outcome_.recovered_findings.push_back(
        Finding{std::move(code), severity, std::move(message), at.location, std::move(subject)});
  }

  TaxonomyRef taxonomy_ref(const XmlElement& e, RefKind kind) {
    const auto* href = e.attribute(xlink("href"));
    if (!href || trim_xml_whitespace(*href).empty()) {
      fail(ParseErrorCode::InvalidTaxonomyRef, e, e.name.local_name + " without xlink:href");
    }
    return TaxonomyRef{std::string(trim_xml_whitespace(*href)), kind, e.location};
  }

  void context(const XmlElement& e) {
    const std::string id = required_id(e);
    if (outcome_.instance.contexts.count(id)) {
      fail(ParseErrorCode::DuplicateContextId, e, "duplicate context id '" + id + "'");
    }
    Context ctx;
    ctx.id = id;
    ctx.location = e.location;

    const auto* entity = e.first_child(xbrli("entity"));
    if (!entity) fail(ParseErrorCode::InvalidEntity, e, "context '" + id + "' has no entity");
    const auto* identifier = entity->first_child(xbrli("identifier"));
    if (!identifier) fail(ParseErrorCode::InvalidEntity, *entity, "entity without identifier");
    const auto* scheme = identifier->attribute("scheme");
    if (!scheme || trim_xml_whitespace(*scheme).empty()) {
      fail(ParseErrorCode::InvalidEntity, *identifier, "identifier without scheme");
    }
    ctx.entity.scheme = std::string(trim_xml_whitespace(*scheme));
    ctx.entity.identifier = std::string(trim_xml_whitespace(identifier->text()));
    if (ctx.entity.identifier.empty()) fail(ParseErrorCode::InvalidEntity, *identifier, "empty entity identifier");
    if (const auto* segment = entity->first_child(xbrli("segment"))) ctx.entity.segment = *segment;

    const auto* period = e.first_child(xbrli("period"));
    if (!period) fail(ParseErrorCode::InvalidPeriodShape, e, "context '" + id + "' has no period");
    try {
      ctx.period = parse_period(*period);
    } catch (const ParseError& err) {
      if (!lenient()) throw;
      if (err.code() == ParseErrorCode::InvalidIso8601) {
        outcome_.recovered_findings.push_back(
            Finding{"PER-001", Severity::Error, "context '" + id + "' dropped: " + err.what(), err.location(), id});
        return;
      }
      if (err.code() == ParseErrorCode::StartAfterEnd) {
        outcome_.recovered_findings.push_back(
            Finding{"PER-002", Severity::Error, "context '" + id + "' dropped: period starts after it ends",
                    err.location(), id});
        return;
      }
      throw;
    }

    if (const auto* scenario = e.first_child(xbrli("scenario"))) {
      if (scenario->has_element_children()) {
        ctx.scenario = *scenario;
      } else if (lenient()) {
        recover("SCN-001", Severity::Warning, *scenario, "empty scenario in context '" + id + "' dropped", id);
      } else {
        fail(ParseErrorCode::EmptyScenario, *scenario, "scenario in context '" + id + "' has no content");
      }
    }
    outcome_.instance.contexts.emplace(id, std::move(ctx));
  }

  bool is_tuple(const XmlElement& e) const {
    if (options_.registry) {
      if (const auto* c = options_.registry->lookup(e.name)) {
        if (c->item_kind == ItemKind::Tuple) return true;
        if (c->item_kind == ItemKind::Item) return false;
      }
    }
    for (const auto* child : e.child_elements()) {
      if (child->name.namespace_uri != ns::kInstance) return true;
    }
    return false;
  }

  std::optional<Fact> fact(const XmlElement& e, std::size_t depth) {
    if (is_tuple(e)) {
      if (depth > options_.max_tuple_depth) {
        fail(ParseErrorCode::TupleDepthExceeded, e,
             "tuple nesting deeper than " + std::to_string(options_.max_tuple_depth));
      }
      Tuple t;
      t.concept_name = e.name;
      t.location = e.location;
      if (const auto* id = e.attribute("id")) t.id = *id;
      if (const auto* ctx = e.attribute("contextRef")) t.stray_context_ref = *ctx;
      for (const auto* child : e.child_elements()) {
        if (child->name.namespace_uri == ns::kInstance || child->name.namespace_uri == ns::kLinkbase) {
          fail(ParseErrorCode::UnexpectedElement, *child, "unexpected " + child->name.clark() + " in tuple");
        }
        if (auto f = fact(*child, depth + 1)) t.children.push_back(std::move(*f));
      }
      return Fact{std::move(t)};
    }

    Item item;
    item.concept_name = e.name;
    item.location = e.location;
    if (const auto* id = e.attribute("id")) item.id = *id;
    const auto* ctx = e.attribute("contextRef");
    if (!ctx) {
      const std::string subject = item.id ? *item.id : item.concept_name.clark();
      if (!lenient()) fail(ParseErrorCode::MissingContextRef, e, "item " + subject + " has no contextRef");
      recover("CTX-002", Severity::Error, e, "item " + subject + " has no contextRef and was dropped", subject);
      return std::nullopt;
    }
    item.context_ref = *ctx;
    if (const auto* unit = e.attribute("unitRef")) item.unit_ref = *unit;
    item.decimals = parse_decimals(e);
    item.precision = parse_precision(e);
    if (item.decimals && item.precision) {
      fail(ParseErrorCode::InvalidAccuracy, e, "item carries both decimals and precision");
    }
    item.value = std::string(trim_xml_whitespace(e.text()));
    return Fact{std::move(item)};
  }

  FootnoteLink footnote_link(const XmlElement& e) {
    FootnoteLink fl;
    fl.location = e.location;
    if (const auto* role = e.attribute(xlink("role"))) fl.role = *role;
    auto need = [&](const XmlElement& at, std::string_view attr) -> std::string {
      const auto* v = at.attribute(xlink(attr));
      if (!v || v->empty()) {
        fail(ParseErrorCode::InvalidFootnoteLink, at, at.name.local_name + " without xlink:" + std::string(attr));
      }
      return *v;
    };
    for (const auto* child : e.child_elements()) {
      const auto* type = child->attribute(xlink("type"));
      if (!type) continue;
      if (*type == "locator") {
        fl.locators[need(*child, "label")].push_back(FactRef{need(*child, "href"), child->location});
      } else if (*type == "resource") {
        Footnote note;
        note.content = child->children;
        note.location = child->location;
        if (const auto* lang = child->attribute(QName{std::string(ns::kXml), "lang"})) note.language = *lang;
        if (const auto* role = child->attribute(xlink("role"))) note.role = *role;
        fl.footnotes[need(*child, "label")].push_back(std::move(note));
      } else if (*type == "arc") {
        FootnoteArc arc{need(*child, "from"), need(*child, "to"), {}, child->location};
        if (const auto* role = child->attribute(xlink("arcrole"))) arc.arcrole = *role;
        fl.arcs.push_back(std::move(arc));
      }
    }
    std::vector<FootnoteArc> kept;
    for (auto& arc : fl.arcs) {
      const bool from_ok = fl.has_label(arc.from);
      const bool to_ok = fl.has_label(arc.to);
      if (from_ok && to_ok) {
        kept.push_back(std::move(arc));
        continue;
      }
      const std::string missing = from_ok ? arc.to : arc.from;
      if (!lenient()) {
        throw ParseError(ParseErrorCode::InvalidFootnoteLink, arc.location,
                         "footnote arc endpoint '" + missing + "' matches no locator or footnote");
      }
      outcome_.recovered_findings.push_back(Finding{"FTN-001", Severity::Error,
                                                    "footnote arc endpoint '" + missing +
                                                        "' matches no locator or footnote; arc dropped",
                                                    arc.location, missing});
    }
    fl.arcs = std::move(kept);
    return fl;
  }

  const ParseOptions& options_;
  ParseOutcome outcome_;
};

void scan(const XmlElement& e, bool inside, const ParseOptions& options, EmbeddedScan& out) {
  const bool is_xbrl = e.name == xbrli("xbrl");
  if (is_xbrl && inside) {
    out.findings.push_back(Finding{"EMB-001", Severity::Warning,
                                   "xbrl element nested inside another instance is not parsed separately",
                                   e.location, e.attribute("id") ? *e.attribute("id") : "xbrl@" + e.location.str()});
  } else if (is_xbrl) {
    EmbeddedInstance found;
    found.location = e.location;
    try {
      found.outcome = parse_instance(e, options);
    } catch (const ParseError& err) {
      found.error = err;
    }
    out.instances.push_back(std::move(found));
  }
  for (const auto* child : e.child_elements()) scan(*child, inside || is_xbrl, options, out);
}

}  // namespace

Period parse_period(const XmlElement& element) {
  const auto children = element.child_elements();
  const auto* instant = element.first_child(xbrli("instant"));
  const auto* forever = element.first_child(xbrli("forever"));
  const auto* start = element.first_child(xbrli("startDate"));
  const auto* end = element.first_child(xbrli("endDate"));

  if (instant && children.size() == 1) return Instant{parse_date_child(*instant)};
  if (forever && children.size() == 1) return Forever{};
  if (start && end && children.size() == 2) {
    Duration d{parse_date_child(*start), parse_date_child(*end)};
    if (timeline_position(d.start, PeriodEdge::Start) > timeline_position(d.end, PeriodEdge::End)) {
      fail(ParseErrorCode::StartAfterEnd, element,
           "period starts at " + d.start.lexical + " after it ends at " + d.end.lexical);
    }
    return d;
  }
  fail(ParseErrorCode::InvalidPeriodShape, element,
       "period must hold exactly one of instant, forever, or startDate with endDate");
}

Unit parse_unit(const XmlElement& element) {
  Unit unit;
  unit.id = required_id(element);
  unit.location = element.location;
  const auto children = element.child_elements();
  if (children.empty()) fail(ParseErrorCode::EmptyUnit, element, "unit '" + unit.id + "' has no measures");
  if (const auto* divide = element.first_child(xbrli("divide"))) {
    if (children.size() != 1) fail(ParseErrorCode::MalformedDivide, element, "divide must be the only unit child");
    const auto* num = divide->first_child(xbrli("unitNumerator"));
    const auto* den = divide->first_child(xbrli("unitDenominator"));
    if (!num || !den || divide->child_elements().size() != 2) {
      fail(ParseErrorCode::MalformedDivide, *divide, "divide needs one unitNumerator and one unitDenominator");
    }
    unit.body = Divide{parse_measures(*num, ParseErrorCode::MalformedDivide),
                       parse_measures(*den, ParseErrorCode::MalformedDivide)};
    return unit;
  }
  unit.body = Measures{parse_measures(element, ParseErrorCode::EmptyUnit)};
  return unit;
}

ParseOutcome parse_instance(const XmlElement& xbrl_root, const ParseOptions& options) {
  return InstanceParser(options).run(xbrl_root);
}

ParseOutcome parse_instance(const XmlTree& tree, const ParseOptions& options) {
  return parse_instance(tree.root, options);
}

EmbeddedScan find_instances(const XmlTree& tree, const ParseOptions& options) {
  EmbeddedScan out;
  scan(tree.root, false, options, out);
  return out;
}

}  // namespace xbrlcore
