#include "xbrlcore/validation.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "xbrlcore/namespaces.hpp"

namespace xbrlcore {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> rules = {
      {"CTX-001", Severity::Error, "Item contextRef names no context in the instance", false},
      {"CTX-002", Severity::Error, "Item has no contextRef (reported by lenient parsing, item dropped)", false},
      {"PER-001", Severity::Error, "Period date is not an ISO 8601 date or date-time", false},
      {"PER-002", Severity::Error, "Duration starts after it ends", false},
      {"PER-003", Severity::Warning, "Duration mixes zoned and zoneless values; UTC assumed for the zoneless one", false},
      {"UNT-001", Severity::Error, "Item unitRef names no unit in the instance", false},
      {"UNT-002", Severity::Error, "Monetary item uses a unit with no ISO 4217 measure", true},
      {"NUM-001", Severity::Error, "Numeric item has no unitRef", true},
      {"FTN-001", Severity::Error, "Footnote arc or locator endpoint does not resolve", false},
      {"SCN-001", Severity::Warning, "Scenario element has no content", false},
      {"T-001", Severity::Warning, "Tuple carries a contextRef", false},
      {"T-DEPTH", Severity::Error, "Tuple nesting exceeds the configured depth bound", false},
      {"DTS-001", Severity::Error, "Fact concept_name is not declared in the taxonomy set", true},
      {"DTS-002", Severity::Warning, "Taxonomy item concept_name declares no periodType", true},
      {"DTS-003", Severity::Warning, "Concept declared more than once in the taxonomy set; first kept", true},
      {"DTS-004", Severity::Warning, "Taxonomy schema has no targetNamespace; its concepts are skipped", true},
      {"EMB-001", Severity::Warning, "xbrl element nested inside another instance", false},
  };
  return rules;
}

const Rule* find_rule(std::string_view code) {
  for (const auto& r : rule_catalog()) {
    if (r.code == code) return &r;
  }
  return nullptr;
}

bool is_decimal_lexeme(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
  }
  return digits > 0 && i == text.size();
}

bool is_numeric_item(const Item& item, const ConceptRegistry* registry) {
  if (registry) {
    if (const auto* c = registry->lookup(item.concept_name)) {
      return c->data_kind == DataKind::Monetary || c->data_kind == DataKind::Shares ||
             c->data_kind == DataKind::Numeric;
    }
  }
  return item.unit_ref.has_value() && is_decimal_lexeme(trim_xml_whitespace(item.value));
}

std::string content_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

namespace {

std::string subject_of(const Item& item) { return item.id ? *item.id : item.concept_name.clark(); }

bool has_iso4217_measure(const Unit& unit) {
  const std::vector<QName>& candidates = std::holds_alternative<Measures>(unit.body)
                                             ? std::get<Measures>(unit.body).measures
                                             : std::get<Divide>(unit.body).numerator;
  return std::any_of(candidates.begin(), candidates.end(),
                     [](const QName& m) { return m.namespace_uri == ns::kIso4217; });
}

class Checker {
 public:
  Checker(const Instance& inst, const Dts* dts, const ValidationOptions& options, ValidationReport& report)
      : inst_(inst), dts_(dts), options_(options), report_(report) {}

  void run() {
    walk_facts(inst_, [this](const Fact& f, std::size_t depth) {
      if (const auto* item = f.item()) {
        check_item(*item);
      } else {
        check_tuple(*f.tuple(), depth);
      }
      if (const auto& id = f.id()) fact_ids_.insert(*id);
    });
    for (const auto& [id, ctx] : inst_.contexts) check_context(ctx);
    for (const auto& fl : inst_.footnote_links) check_footnotes(fl);
    if (dts_) {
      for (const auto& f : dts_->findings) report_.findings.push_back(f);
    }
  }

 private:
  void emit(std::string_view code, std::string message, SourceLocation at, std::string subject) {
    const Rule* rule = find_rule(code);
    report_.findings.push_back(
        Finding{std::string(code), rule->severity, std::move(message), at, std::move(subject)});
  }

  void check_item(const Item& item) {
    const std::string subject = subject_of(item);
    if (!inst_.contexts.count(item.context_ref)) {
      emit("CTX-001", "item " + subject + " refers to missing context '" + item.context_ref + "'", item.location,
           subject);
    }
    const Unit* unit = nullptr;
    if (item.unit_ref) {
      auto it = inst_.units.find(*item.unit_ref);
      if (it == inst_.units.end()) {
        emit("UNT-001", "item " + subject + " refers to missing unit '" + *item.unit_ref + "'", item.location,
             subject);
      } else {
        unit = &it->second;
      }
    }
    if (!dts_) return;
    const Concept* concept_name = dts_->concepts.lookup(item.concept_name);
    if (!concept_name) {
      emit("DTS-001", "concept " + item.concept_name.clark() + " of item " + subject + " is not in the taxonomy set",
           item.location, subject);
    }
    if (is_numeric_item(item, &dts_->concepts) && !item.unit_ref) {
      emit("NUM-001", "numeric item " + subject + " has no unitRef", item.location, subject);
    }
    if (concept_name && concept_name->data_kind == DataKind::Monetary && unit && !has_iso4217_measure(*unit)) {
      emit("UNT-002", "monetary item " + subject + " uses unit '" + unit->id + "' with no ISO 4217 measure",
           item.location, subject);
    }
  }

  void check_tuple(const Tuple& t, std::size_t depth) {
    const std::string subject = t.id ? *t.id : t.concept_name.clark();
    if (t.stray_context_ref) {
      emit("T-001", "tuple " + subject + " carries contextRef '" + *t.stray_context_ref + "'", t.location, subject);
    }
    if (depth > options_.max_tuple_depth) {
      emit("T-DEPTH",
           "tuple " + subject + " is nested " + std::to_string(depth) + " deep, bound is " +
               std::to_string(options_.max_tuple_depth),
           t.location, subject);
    }
    if (dts_ && !dts_->concepts.lookup(t.concept_name)) {
      emit("DTS-001", "concept " + t.concept_name.clark() + " of tuple " + subject + " is not in the taxonomy set",
           t.location, subject);
    }
  }

  void check_date(const Context& ctx, const DateOrDateTime& d) {
    if (!parse_iso8601(d.lexical)) {
      emit("PER-001", "context '" + ctx.id + "' has non-ISO 8601 date '" + d.lexical + "'", ctx.location, ctx.id);
    }
  }

  void check_context(const Context& ctx) {
    if (const auto* i = std::get_if<Instant>(&ctx.period)) {
      check_date(ctx, i->when);
    } else if (const auto* d = std::get_if<Duration>(&ctx.period)) {
      check_date(ctx, d->start);
      check_date(ctx, d->end);
      if (timeline_position(d->start, PeriodEdge::Start) > timeline_position(d->end, PeriodEdge::End)) {
        emit("PER-002", "context '" + ctx.id + "' starts after it ends", ctx.location, ctx.id);
      }
      if (mixes_zones(d->start, d->end)) {
        emit("PER-003",
             "context '" + ctx.id + "' compares " + d->start.lexical + " with " + d->end.lexical +
                 " assuming UTC for the zoneless value",
             ctx.location, ctx.id);
      }
    }
    if (ctx.scenario && !ctx.scenario->has_element_children()) {
      emit("SCN-001", "context '" + ctx.id + "' has an empty scenario", ctx.scenario->location, ctx.id);
    }
  }

  void check_footnotes(const FootnoteLink& fl) {
    for (const auto& [label, refs] : fl.locators) {
      for (const auto& ref : refs) {
        const std::string id = ref.fact_id();
        if (id.empty() || !fact_ids_.count(id)) {
          emit("FTN-001", "footnote locator '" + label + "' points at '" + ref.href + "', which is no fact here",
               ref.location, ref.href);
        }
      }
    }
    for (const auto& arc : fl.arcs) {
      for (const auto* end : {&arc.from, &arc.to}) {
        if (!fl.has_label(*end)) {
          emit("FTN-001", "footnote arc endpoint '" + *end + "' matches no locator or footnote", arc.location, *end);
        }
      }
    }
  }

  const Instance& inst_;
  const Dts* dts_;
  const ValidationOptions& options_;
  ValidationReport& report_;
  std::set<std::string> fact_ids_;
};

}  // namespace

void finalize_report(ValidationReport& report) {
  std::stable_sort(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.location, a.code, a.subject, a.message) < std::tie(b.location, b.code, b.subject, b.message);
  });
  report.counts = {{Severity::Error, 0}, {Severity::Warning, 0}, {Severity::Info, 0}};
  for (const auto& f : report.findings) ++report.counts[f.severity];
}

ValidationReport validate(const Instance& instance, const Dts* dts, const ValidationOptions& options) {
  ValidationReport report;
  Checker(instance, dts, options, report).run();
  if (!dts) {
    for (const auto& r : rule_catalog()) {
      if (r.requires_dts) report.skipped_rules.emplace_back(r.code);
    }
  }
  finalize_report(report);
  return report;
}

ValidationReport validate(const ParseOutcome& outcome, const Dts* dts, const ValidationOptions& options) {
  ValidationReport report = validate(outcome.instance, dts, options);
  report.findings.insert(report.findings.begin(), outcome.recovered_findings.begin(), outcome.recovered_findings.end());
  finalize_report(report);
  return report;
}

}  // namespace xbrlcore
