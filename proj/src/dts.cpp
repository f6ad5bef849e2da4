#include "xbrlcore/dts.hpp"

#include <array>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "xbrlcore/namespaces.hpp"
#include "xbrlcore/uri.hpp"

namespace xbrlcore {

bool ConceptRegistry::add(Concept concept_name) {
  const QName key = concept_name.qname;
  return by_qname_.emplace(key, std::move(concept_name)).second;
}

const Concept* ConceptRegistry::lookup(const QName& qname) const {
  auto it = by_qname_.find(qname);
  return it == by_qname_.end() ? nullptr : &it->second;
}

void ConceptRegistry::resolve_substitution_chains() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [qname, concept_name] : by_qname_) {
      if (concept_name.item_kind != ItemKind::Unknown || !concept_name.substitution_group) continue;
      const auto* head = lookup(*concept_name.substitution_group);
      if (head && head != &concept_name && head->item_kind != ItemKind::Unknown) {
        concept_name.item_kind = head->item_kind;
        changed = true;
      }
    }
  }
}

std::string_view to_string(ItemKind k) {
  switch (k) {
    case ItemKind::Item: return "item";
    case ItemKind::Tuple: return "tuple";
    case ItemKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(DataKind k) {
  switch (k) {
    case DataKind::Monetary: return "monetary";
    case DataKind::Shares: return "shares";
    case DataKind::Numeric: return "numeric";
    case DataKind::NonNumeric: return "non-numeric";
    case DataKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(PeriodType k) {
  switch (k) {
    case PeriodType::Instant: return "instant";
    case PeriodType::Duration: return "duration";
    case PeriodType::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Balance k) {
  switch (k) {
    case Balance::Debit: return "debit";
    case Balance::Credit: return "credit";
    case Balance::None: return "none";
  }
  return "none";
}

std::string_view to_string(DocumentKind k) {
  return k == DocumentKind::TaxonomySchema ? "schema" : "linkbase";
}

FileSystemResolver::FileSystemResolver(std::filesystem::path root) : root_(std::move(root)) {}

FetchResult FileSystemResolver::fetch(const std::string& uri) {
  const auto rel = uri_to_relative_path(uri);
  if (!rel) return FetchResult::failure("uri maps outside the taxonomy root");
  const auto path = root_ / *rel;
  std::ifstream in(path, std::ios::binary);
  if (!in) return FetchResult::failure("not found under taxonomy root: " + *rel);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FetchResult::ok(buf.str());
}

FetchResult MemoryResolver::fetch(const std::string& uri) {
  ++fetches_[uri];
  auto it = docs_.find(uri);
  if (it == docs_.end()) return FetchResult::failure("no such document");
  return FetchResult::ok(it->second);
}

std::size_t MemoryResolver::fetch_count(const std::string& uri) const {
  auto it = fetches_.find(uri);
  return it == fetches_.end() ? 0 : it->second;
}

FetchResult FallbackResolver::fetch(const std::string& uri) {
  std::string reasons;
  for (auto* r : chain_) {
    auto result = r->fetch(uri);
    if (result.bytes) return result;
    if (!reasons.empty()) reasons += "; ";
    reasons += result.error;
  }
  return FetchResult::failure(reasons.empty() ? "no resolver configured" : reasons);
}

FetchResult CachingResolver::fetch(const std::string& uri) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(uri); it != cache_.end()) return it->second;
  }
  auto result = inner_.fetch(uri);
  std::lock_guard lock(mutex_);
  return cache_.emplace(uri, std::move(result)).first->second;
}

namespace {

QName xs(std::string_view local) { return {std::string(ns::kXmlSchema), std::string(local)}; }
QName xlink(std::string_view local) { return {std::string(ns::kXLink), std::string(local)}; }

constexpr std::array kNumericItemTypes = {
    "decimalItemType",         "floatItemType",         "doubleItemType",        "integerItemType",
    "nonPositiveIntegerItemType", "negativeIntegerItemType", "longItemType",       "intItemType",
    "shortItemType",           "byteItemType",          "nonNegativeIntegerItemType", "unsignedLongItemType",
    "unsignedIntItemType",     "unsignedShortItemType", "unsignedByteItemType",  "positiveIntegerItemType",
    "pureItemType",            "fractionItemType",
};

DataKind classify_type(const std::optional<QName>& type) {
  if (!type || type->namespace_uri != ns::kInstance) return DataKind::Unknown;
  const auto& local = type->local_name;
  if (local == "monetaryItemType") return DataKind::Monetary;
  if (local == "sharesItemType") return DataKind::Shares;
  for (const char* n : kNumericItemTypes) {
    if (local == n) return DataKind::Numeric;
  }
  if (local.size() > 8 && local.compare(local.size() - 8, 8, "ItemType") == 0) return DataKind::NonNumeric;
  return DataKind::Unknown;
}

void collect_xlink_hrefs(const XmlElement& e, std::vector<std::string>& out) {
  if (const auto* href = e.attribute(xlink("href"))) {
    const auto* type = e.attribute(xlink("type"));
    if (type && (*type == "simple" || *type == "locator")) out.push_back(*href);
  }
  for (const auto* child : e.child_elements()) collect_xlink_hrefs(*child, out);
}

void collect_schema_refs(const XmlElement& e, std::vector<std::string>& out) {
  if (e.name == xs("import") || e.name == xs("include") || e.name == xs("redefine")) {
    if (const auto* loc = e.attribute("schemaLocation")) out.push_back(*loc);
  } else if (const auto* href = e.attribute(xlink("href"))) {
    const auto* type = e.attribute(xlink("type"));
    if (type && (*type == "simple" || *type == "locator")) out.push_back(*href);
  }
  for (const auto* child : e.child_elements()) collect_schema_refs(*child, out);
}

}  // namespace

std::vector<std::string> linkbase_refs(const XmlTree& tree) {
  std::vector<std::string> out;
  collect_xlink_hrefs(tree.root, out);
  return out;
}

SchemaContents load_taxonomy_schema(const XmlTree& tree, const std::string& uri) {
  const auto& root = tree.root;
  if (root.name != xs("schema")) throw DtsError(DtsErrorCode::NotASchema, uri + " is not an XML Schema document");
  SchemaContents out;
  collect_schema_refs(root, out.outgoing_refs);

  const auto* tns = root.attribute("targetNamespace");
  const auto elements = root.child_elements(xs("element"));
  if (!tns || tns->empty()) {
    if (!elements.empty()) {
      out.findings.push_back(Finding{"DTS-004", Severity::Warning,
                                     "schema " + uri + " has no targetNamespace; " + std::to_string(elements.size()) +
                                         " element declarations skipped",
                                     root.location, uri});
    }
    return out;
  }

  const QName period_attr{std::string(ns::kInstance), "periodType"};
  const QName balance_attr{std::string(ns::kInstance), "balance"};
  for (const auto* el : elements) {
    const auto* name = el->attribute("name");
    if (!name || name->empty()) continue;
    Concept c;
    c.qname = QName{*tns, *name};
    c.source_uri = uri;
    if (const auto* sg = el->attribute("substitutionGroup")) c.substitution_group = el->resolve_qname(*sg);
    if (const auto* type = el->attribute("type")) c.type = el->resolve_qname(*type);
    if (c.substitution_group && c.substitution_group->namespace_uri == ns::kInstance) {
      if (c.substitution_group->local_name == "item") c.item_kind = ItemKind::Item;
      if (c.substitution_group->local_name == "tuple") c.item_kind = ItemKind::Tuple;
    }
    c.data_kind = classify_type(c.type);
    if (const auto* pt = el->attribute(period_attr)) {
      if (*pt == "instant") c.period_type = PeriodType::Instant;
      if (*pt == "duration") c.period_type = PeriodType::Duration;
    }
    if (const auto* bal = el->attribute(balance_attr)) {
      if (*bal == "debit") c.balance = Balance::Debit;
      if (*bal == "credit") c.balance = Balance::Credit;
    }
    if (const auto* abs = el->attribute("abstract")) c.abstract = *abs == "true" || *abs == "1";
    if (c.period_type == PeriodType::Unknown && c.item_kind != ItemKind::Tuple) {
      out.findings.push_back(Finding{"DTS-002", Severity::Warning,
                                     "concept " + c.qname.clark() + " in " + uri + " declares no periodType",
                                     el->location, c.qname.clark()});
    }
    out.concepts.push_back(std::move(c));
  }
  return out;
}

SchemaContents load_taxonomy_schema(std::string_view bytes, const std::string& uri) {
  return load_taxonomy_schema(read_document(bytes), uri);
}

Dts discover(const Instance& instance, Resolver& resolver, const std::string& base_uri, const DtsLimits& limits) {
  struct Pending {
    std::string uri;
    std::string href;
    std::string from;
    std::size_t depth;
  };

  Dts dts;
  CachingResolver cache(resolver);
  std::set<std::string> seen;
  std::deque<Pending> queue;

  auto reference = [&](const std::string& from_uri, const std::string& href, const std::string& referenced_from,
                       std::size_t depth) {
    const std::string uri = strip_fragment(resolve_uri(from_uri, href));
    if (!seen.insert(uri).second) return;
    if (depth > limits.max_depth) {
      dts.limit_exceeded = true;
      dts.unresolved.push_back({uri, href, referenced_from, "depth limit " + std::to_string(limits.max_depth) + " reached"});
      return;
    }
    queue.push_back({uri, href, referenced_from, depth});
  };

  for (const auto& ref : instance.schema_refs) reference(base_uri, ref.href, base_uri, 1);
  for (const auto& ref : instance.linkbase_refs) reference(base_uri, ref.href, base_uri, 1);

  while (!queue.empty()) {
    Pending next = std::move(queue.front());
    queue.pop_front();
    if (dts.documents.size() >= limits.max_documents) {
      dts.limit_exceeded = true;
      dts.unresolved.push_back({next.uri, next.href, next.from,
                                "document limit " + std::to_string(limits.max_documents) + " reached"});
      continue;
    }
    auto fetched = cache.fetch(next.uri);
    if (!fetched.bytes) {
      dts.unresolved.push_back({next.uri, next.href, next.from, fetched.error});
      continue;
    }
    XmlTree tree;
    try {
      tree = read_document(*fetched.bytes);
    } catch (const XmlError& err) {
      dts.unresolved.push_back({next.uri, next.href, next.from, std::string("not well-formed XML: ") + err.what()});
      continue;
    }

    DtsDocument doc{next.uri, DocumentKind::TaxonomySchema, {}, next.depth};
    if (tree.root.name == xs("schema")) {
      auto contents = load_taxonomy_schema(tree, next.uri);
      doc.outgoing_refs = std::move(contents.outgoing_refs);
      for (auto& f : contents.findings) dts.findings.push_back(std::move(f));
      for (auto& c : contents.concepts) {
        if (const auto* prior = dts.concepts.lookup(c.qname)) {
          dts.findings.push_back(Finding{"DTS-003", Severity::Warning,
                                         "concept " + c.qname.clark() + " declared in both " + prior->source_uri +
                                             " and " + c.source_uri + "; keeping the first",
                                         {}, c.qname.clark()});
          continue;
        }
        dts.concepts.add(std::move(c));
      }
    } else if (tree.root.name == QName{std::string(ns::kLinkbase), "linkbase"}) {
      doc.kind = DocumentKind::Linkbase;
      doc.outgoing_refs = linkbase_refs(tree);
    } else {
      dts.unresolved.push_back({next.uri, next.href, next.from,
                                "root element " + tree.root.name.clark() + " is neither a schema nor a linkbase"});
      continue;
    }
    dts.load_order.push_back(next.uri);
    for (const auto& href : doc.outgoing_refs) reference(next.uri, href, next.uri, next.depth + 1);
    dts.documents.emplace(next.uri, std::move(doc));
  }

  dts.concepts.resolve_substitution_chains();
  return dts;
}

}  // namespace xbrlcore
