#include <set>

#include "xbrlcore/namespaces.hpp"
#include "xbrlcore/parser.hpp"

namespace xbrlcore {

namespace {

struct FixedPrefix {
  std::string_view prefix;
  std::string_view uri;
};

constexpr FixedPrefix kFixedPrefixes[] = {
    {"xbrli", ns::kInstance},
    {"link", ns::kLinkbase},
    {"xlink", ns::kXLink},
    {"iso4217", ns::kIso4217},
};

QName xbrli(std::string_view local) { return {std::string(ns::kInstance), std::string(local)}; }
QName link(std::string_view local) { return {std::string(ns::kLinkbase), std::string(local)}; }
QName xlink(std::string_view local) { return {std::string(ns::kXLink), std::string(local)}; }

void collect_fact_namespaces(const std::vector<Fact>& facts, std::set<std::string>& out) {
  for (const auto& f : facts) {
    out.insert(f.concept_name().namespace_uri);
    if (const auto* t = f.tuple()) collect_fact_namespaces(t->children, out);
  }
}

class InstanceWriter {
 public:
  InstanceWriter(const Instance& instance, std::string& out) : inst_(instance), w_(out) {}

  void write() {
    declare_prefixes();
    w_.start_element(xbrli("xbrl"), "xbrli");
    for (const auto& ref : inst_.schema_refs) taxonomy_ref(ref, "schemaRef");
    for (const auto& ref : inst_.linkbase_refs) taxonomy_ref(ref, "linkbaseRef");
    for (const auto& [id, ctx] : inst_.contexts) context(ctx);
    for (const auto& [id, unit] : inst_.units) this->unit(unit);
    for (const auto& f : inst_.facts) fact(f);
    for (const auto& fl : inst_.footnote_links) footnote_link(fl);
    w_.end_element();
  }

 private:
  void declare_prefixes() {
    std::set<std::string> taken;
    std::set<std::string> bound_uris;
    for (const auto& fp : kFixedPrefixes) {
      w_.declare_root_prefix(std::string(fp.prefix), std::string(fp.uri));
      taken.emplace(fp.prefix);
      bound_uris.emplace(fp.uri);
    }
    std::set<std::string> uris;
    collect_fact_namespaces(inst_.facts, uris);
    for (const auto& [id, unit] : inst_.units) {
      auto add = [&](const std::vector<QName>& ms) {
        for (const auto& m : ms) uris.insert(m.namespace_uri);
      };
      if (const auto* m = std::get_if<Measures>(&unit.body)) {
        add(m->measures);
      } else {
        const auto& d = std::get<Divide>(unit.body);
        add(d.numerator);
        add(d.denominator);
      }
    }
    unsigned counter = 0;
    for (const auto& uri : uris) {
      if (uri.empty() || bound_uris.count(uri)) continue;
      std::string chosen;
      for (const auto& [prefix, hinted] : inst_.prefix_hints) {
        if (hinted == uri && !taken.count(prefix) && prefix != "xml" && prefix.rfind("xml", 0) != 0) {
          chosen = prefix;
          break;
        }
      }
      while (chosen.empty() || taken.count(chosen)) chosen = "ns" + std::to_string(counter++);
      w_.declare_root_prefix(chosen, uri);
      taken.insert(chosen);
      bound_uris.insert(uri);
    }
  }

  void taxonomy_ref(const TaxonomyRef& ref, std::string_view element) {
    w_.start_element(link(element), "link");
    w_.attribute(xlink("type"), "simple", "xlink");
    w_.attribute(xlink("href"), ref.href, "xlink");
    if (ref.kind == RefKind::Linkbase) w_.attribute(xlink("arcrole"), ns::kLinkbaseRefArcrole, "xlink");
    w_.end_element();
  }

  void date_element(std::string_view name, const DateOrDateTime& value) {
    w_.start_element(xbrli(name), "xbrli");
    w_.text(value.lexical);
    w_.end_element();
  }

  void context(const Context& ctx) {
    w_.start_element(xbrli("context"), "xbrli");
    w_.attribute({"", "id"}, ctx.id);
    w_.start_element(xbrli("entity"), "xbrli");
    w_.start_element(xbrli("identifier"), "xbrli");
    w_.attribute({"", "scheme"}, ctx.entity.scheme);
    w_.text(ctx.entity.identifier);
    w_.end_element();
    if (ctx.entity.segment) w_.element(*ctx.entity.segment);
    w_.end_element();

    w_.start_element(xbrli("period"), "xbrli");
    if (const auto* i = std::get_if<Instant>(&ctx.period)) {
      date_element("instant", i->when);
    } else if (const auto* d = std::get_if<Duration>(&ctx.period)) {
      date_element("startDate", d->start);
      date_element("endDate", d->end);
    } else {
      w_.start_element(xbrli("forever"), "xbrli");
      w_.end_element();
    }
    w_.end_element();

    if (ctx.scenario) w_.element(*ctx.scenario);
    w_.end_element();
  }

  void measures(const std::vector<QName>& list) {
    for (const auto& m : list) {
      w_.start_element(xbrli("measure"), "xbrli");
      const std::string text = w_.qname_text(m);
      w_.text(text);
      w_.end_element();
    }
  }

  void unit(const Unit& u) {
    w_.start_element(xbrli("unit"), "xbrli");
    w_.attribute({"", "id"}, u.id);
    if (const auto* m = std::get_if<Measures>(&u.body)) {
      measures(m->measures);
    } else {
      const auto& d = std::get<Divide>(u.body);
      w_.start_element(xbrli("divide"), "xbrli");
      w_.start_element(xbrli("unitNumerator"), "xbrli");
      measures(d.numerator);
      w_.end_element();
      w_.start_element(xbrli("unitDenominator"), "xbrli");
      measures(d.denominator);
      w_.end_element();
      w_.end_element();
    }
    w_.end_element();
  }

  void fact(const Fact& f) {
    if (const auto* item = f.item()) {
      w_.start_element(item->concept_name);
      if (item->id) w_.attribute({"", "id"}, *item->id);
      w_.attribute({"", "contextRef"}, item->context_ref);
      if (item->unit_ref) w_.attribute({"", "unitRef"}, *item->unit_ref);
      if (item->decimals) {
        w_.attribute({"", "decimals"}, std::holds_alternative<Infinite>(*item->decimals)
                                           ? std::string("INF")
                                           : std::to_string(std::get<std::int64_t>(*item->decimals)));
      }
      if (item->precision) {
        w_.attribute({"", "precision"}, std::holds_alternative<Infinite>(*item->precision)
                                            ? std::string("INF")
                                            : std::to_string(std::get<std::uint64_t>(*item->precision)));
      }
      if (!item->value.empty()) w_.text(item->value);
      w_.end_element();
      return;
    }
    const auto& t = *f.tuple();
    w_.start_element(t.concept_name);
    if (t.id) w_.attribute({"", "id"}, *t.id);
    if (t.stray_context_ref) w_.attribute({"", "contextRef"}, *t.stray_context_ref);
    for (const auto& child : t.children) fact(child);
    w_.end_element();
  }

  void footnote_link(const FootnoteLink& fl) {
    w_.start_element(link("footnoteLink"), "link");
    w_.attribute(xlink("type"), "extended", "xlink");
    if (!fl.role.empty()) w_.attribute(xlink("role"), fl.role, "xlink");
    for (const auto& [label, refs] : fl.locators) {
      for (const auto& ref : refs) {
        w_.start_element(link("loc"), "link");
        w_.attribute(xlink("type"), "locator", "xlink");
        w_.attribute(xlink("href"), ref.href, "xlink");
        w_.attribute(xlink("label"), label, "xlink");
        w_.end_element();
      }
    }
    for (const auto& [label, notes] : fl.footnotes) {
      for (const auto& note : notes) {
        w_.start_element(link("footnote"), "link");
        w_.attribute(xlink("type"), "resource", "xlink");
        w_.attribute(xlink("label"), label, "xlink");
        if (note.role) w_.attribute(xlink("role"), *note.role, "xlink");
        if (!note.language.empty()) w_.attribute({std::string(ns::kXml), "lang"}, note.language, "xml");
        for (const auto& n : note.content) w_.node(n);
        w_.end_element();
      }
    }
    for (const auto& arc : fl.arcs) {
      w_.start_element(link("footnoteArc"), "link");
      w_.attribute(xlink("type"), "arc", "xlink");
      if (!arc.arcrole.empty()) w_.attribute(xlink("arcrole"), arc.arcrole, "xlink");
      w_.attribute(xlink("from"), arc.from, "xlink");
      w_.attribute(xlink("to"), arc.to, "xlink");
      w_.end_element();
    }
    w_.end_element();
  }

  const Instance& inst_;
  XmlWriter w_;
};

}  // namespace

std::string serialize(const Instance& instance) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  InstanceWriter(instance, out).write();
  out += '\n';
  return out;
}

}  // namespace xbrlcore
