#pragma once

// Command-line surface: flat fact tables, report renderings, and the
// `xbrlcore` command dispatcher.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "xbrlcore/dts.hpp"
#include "xbrlcore/model.hpp"
#include "xbrlcore/parser.hpp"
#include "xbrlcore/validation.hpp"

namespace xbrlcore::cli {

/// One item flattened for tabular output.
///   concept     "{uri}local"
///   period      "I:<instant>", "D:<start>/<end>", or "F"
///   unit        measures joined by "*", a divide as "<num>/<den>", each
///               measure in "{uri}local" form; empty without a unit
///   tuple_path  enclosing tuple concepts, outermost first, joined by "/"
struct FactRow {
  std::string concept_name;
  std::string value;
  std::string context_id;
  std::string entity;
  std::string period;
  std::string unit;
  std::string tuple_path;

  friend bool operator==(const FactRow&, const FactRow&) = default;
};

inline constexpr std::string_view kFactsCsvHeader = "concept,value,context_id,entity,period,unit,tuple_path";

/// One row per item, document order. Unresolvable context or unit references
/// leave the dependent columns empty.
std::vector<FactRow> fact_rows(const Instance& instance);

std::string period_text(const Period& period);
std::string unit_text(const Unit& unit);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

std::string render_facts_csv(const std::vector<FactRow>& rows);
std::string render_facts_json(const std::vector<FactRow>& rows);
std::string render_facts_text(const std::vector<FactRow>& rows);

std::string render_report_json(const ValidationReport& report);
std::string render_report_text(const ValidationReport& report);
std::string render_report_csv(const ValidationReport& report);

std::string render_rules_text();
std::string render_rules_json();

std::string render_dts_text(const Dts& dts);
std::string render_dts_json(const Dts& dts);

/// Runs one invocation. Data goes to `out`, diagnostics to `err`. Returns 0,
/// 1 (validation errors found), or 2 (usage, I/O, or parse failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xbrlcore::cli
