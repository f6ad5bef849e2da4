#pragma once

// Rule engine over a parsed instance. Every problem is a Finding; validate()
// itself never fails.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xbrlcore/concept.hpp"
#include "xbrlcore/dts.hpp"
#include "xbrlcore/finding.hpp"
#include "xbrlcore/model.hpp"
#include "xbrlcore/parser.hpp"

namespace xbrlcore {

struct Rule {
  std::string_view code;
  Severity severity;
  std::string_view description;
  bool requires_dts;
};

/// All rules, in catalog order. Codes are unique.
const std::vector<Rule>& rule_catalog();

/// nullptr for codes outside the catalog.
const Rule* find_rule(std::string_view code);

struct ValidationOptions {
  // Tuples nested deeper than this are reported as T-DEPTH.
  std::size_t max_tuple_depth = 64;
};

struct ValidationReport {
  std::vector<Finding> findings;  // ordered by (location, code, subject, message)
  std::map<Severity, std::size_t> counts;
  std::vector<std::string> skipped_rules;
  std::string input_digest;

  std::size_t count(Severity s) const {
    auto it = counts.find(s);
    return it == counts.end() ? 0 : it->second;
  }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate(const Instance& instance, const Dts* dts = nullptr, const ValidationOptions& options = {});

/// Same as above with the parser's recovered findings merged in.
ValidationReport validate(const ParseOutcome& outcome, const Dts* dts = nullptr, const ValidationOptions& options = {});

/// Puts findings in canonical order and recomputes counts. Exposed for callers
/// that assemble reports from several sources.
void finalize_report(ValidationReport& report);

/// Numeric per the registry when it knows the concept; otherwise the value must
/// lex as a decimal and the item must carry a unitRef.
bool is_numeric_item(const Item& item, const ConceptRegistry* registry);

/// xs:decimal lexical space: optional sign, digits with an optional point.
bool is_decimal_lexeme(std::string_view text);

/// "sha256:<hex>" of the input bytes.
std::string content_digest(std::string_view bytes);

}  // namespace xbrlcore
