#include <json.hpp>

#include "xbrlcore/cli.hpp"

namespace xbrlcore::cli {

std::string period_text(const Period& period) {
  if (const auto* i = std::get_if<Instant>(&period)) return "I:" + i->when.lexical;
  if (const auto* d = std::get_if<Duration>(&period)) return "D:" + d->start.lexical + "/" + d->end.lexical;
  return "F";
}

namespace {

std::string join_measures(const std::vector<QName>& measures) {
  std::string out;
  for (const auto& m : measures) {
    if (!out.empty()) out += '*';
    out += m.clark();
  }
  return out;
}

void flatten(const Instance& inst, const std::vector<Fact>& facts, const std::string& path,
             std::vector<FactRow>& rows) {
  for (const auto& f : facts) {
    if (const auto* t = f.tuple()) {
      flatten(inst, t->children, path.empty() ? t->concept_name.clark() : path + "/" + t->concept_name.clark(), rows);
      continue;
    }
    const Item& item = *f.item();
    FactRow row;
    row.concept_name = item.concept_name.clark();
    row.value = item.value;
    row.context_id = item.context_ref;
    if (auto ctx = inst.contexts.find(item.context_ref); ctx != inst.contexts.end()) {
      row.entity = ctx->second.entity.identifier;
      row.period = period_text(ctx->second.period);
    }
    if (item.unit_ref) {
      if (auto unit = inst.units.find(*item.unit_ref); unit != inst.units.end()) row.unit = unit_text(unit->second);
    }
    row.tuple_path = path;
    rows.push_back(std::move(row));
  }
}

}  // namespace

std::string unit_text(const Unit& unit) {
  if (const auto* m = std::get_if<Measures>(&unit.body)) return join_measures(m->measures);
  const auto& d = std::get<Divide>(unit.body);
  return join_measures(d.numerator) + "/" + join_measures(d.denominator);
}

std::vector<FactRow> fact_rows(const Instance& instance) {
  std::vector<FactRow> rows;
  flatten(instance, instance.facts, "", rows);
  return rows;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_facts_csv(const std::vector<FactRow>& rows) {
  std::string out(kFactsCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += csv_field(r.concept_name) + ',' + csv_field(r.value) + ',' + csv_field(r.context_id) + ',' +
           csv_field(r.entity) + ',' + csv_field(r.period) + ',' + csv_field(r.unit) + ',' + csv_field(r.tuple_path);
    out += '\n';
  }
  return out;
}

std::string render_facts_json(const std::vector<FactRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"concept", r.concept_name},
                   {"value", r.value},
                   {"context_id", r.context_id},
                   {"entity", r.entity},
                   {"period", r.period},
                   {"unit", r.unit},
                   {"tuple_path", r.tuple_path}});
  }
  return arr.dump(2) + "\n";
}

std::string render_facts_text(const std::vector<FactRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.concept_name + " = " + r.value + "  [" + r.context_id;
    if (!r.period.empty()) out += " " + r.period;
    if (!r.unit.empty()) out += " " + r.unit;
    out += "]";
    if (!r.tuple_path.empty()) out += "  in " + r.tuple_path;
    out += '\n';
  }
  out += std::to_string(rows.size()) + " facts\n";
  return out;
}

}  // namespace xbrlcore::cli
