#include "xbrlcore/model.hpp"

namespace xbrlcore {

const QName& Fact::concept_name() const {
  if (const auto* i = item()) return i->concept_name;
  return tuple()->concept_name;
}

const std::optional<std::string>& Fact::id() const {
  if (const auto* i = item()) return i->id;
  return tuple()->id;
}

SourceLocation Fact::location() const {
  if (const auto* i = item()) return i->location;
  return tuple()->location;
}

bool operator==(const Tuple& a, const Tuple& b) {
  return a.concept_name == b.concept_name && a.id == b.id && a.stray_context_ref == b.stray_context_ref &&
         a.children == b.children;
}

bool operator==(const Fact& a, const Fact& b) { return a.value == b.value; }

bool operator==(const Footnote& a, const Footnote& b) {
  if (a.language != b.language || a.role != b.role) return false;
  // Compare content under the element whitespace rule.
  XmlElement wa;
  XmlElement wb;
  wa.children = a.content;
  wb.children = b.content;
  return wa == wb;
}

std::string FactRef::fact_id() const {
  const auto hash = href.find('#');
  if (hash == std::string::npos) return {};
  std::string fragment = href.substr(hash + 1);
  if (fragment.find('(') != std::string::npos) return {};
  return fragment;
}

namespace {

void walk(const std::vector<Fact>& facts, std::size_t depth,
          const std::function<void(const Fact&, std::size_t)>& visit) {
  for (const auto& f : facts) {
    visit(f, depth);
    if (const auto* t = f.tuple()) walk(t->children, depth + 1, visit);
  }
}

}  // namespace

void walk_facts(const Instance& instance, const std::function<void(const Fact&, std::size_t)>& visit) {
  walk(instance.facts, 1, visit);
}

std::size_t fact_count(const Instance& instance) {
  std::size_t n = 0;
  walk_facts(instance, [&](const Fact&, std::size_t) { ++n; });
  return n;
}

std::size_t tuple_count(const Instance& instance) {
  std::size_t n = 0;
  walk_facts(instance, [&](const Fact& f, std::size_t) { n += f.tuple() ? 1 : 0; });
  return n;
}

std::vector<std::reference_wrapper<const Item>> iter_items(const Instance& instance) {
  std::vector<std::reference_wrapper<const Item>> out;
  walk_facts(instance, [&](const Fact& f, std::size_t) {
    if (const auto* i = f.item()) out.emplace_back(*i);
  });
  return out;
}

const Context& resolve_context(const Instance& instance, const Item& item) {
  auto it = instance.contexts.find(item.context_ref);
  if (it == instance.contexts.end()) {
    throw ModelError(ModelErrorCode::UnresolvedContextRef, "no context with id '" + item.context_ref + "'");
  }
  return it->second;
}

const Unit* resolve_unit(const Instance& instance, const Item& item) {
  if (!item.unit_ref) return nullptr;
  auto it = instance.units.find(*item.unit_ref);
  if (it == instance.units.end()) {
    throw ModelError(ModelErrorCode::UnresolvedUnitRef, "no unit with id '" + *item.unit_ref + "'");
  }
  return &it->second;
}

}  // namespace xbrlcore
