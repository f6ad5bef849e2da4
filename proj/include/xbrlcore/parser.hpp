#pragma once

// XmlTree <-> Instance conversion.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xbrlcore/concept.hpp"
#include "xbrlcore/finding.hpp"
#include "xbrlcore/model.hpp"
#include "xbrlcore/xml.hpp"

namespace xbrlcore {

enum class ParseMode { Strict, Lenient };

struct ParseOptions {
  ParseMode mode = ParseMode::Strict;
  std::size_t max_tuple_depth = 64;
  // When set, item/tuple classification follows the registry for the
  // concepts it knows and falls back to element shape for the rest.
  const ConceptRegistry* registry = nullptr;
};

struct ParseOutcome {
  Instance instance;
  std::vector<Finding> recovered_findings;  // always empty in Strict mode
};

enum class ParseErrorCode {
  NotAnXbrlRoot,
  DuplicateContextId,
  DuplicateUnitId,
  MissingContextRef,
  TupleDepthExceeded,
  InvalidPeriodShape,
  InvalidIso8601,
  StartAfterEnd,
  EmptyUnit,
  MalformedDivide,
  UnboundPrefix,
  InvalidEntity,
  InvalidAccuracy,
  InvalidTaxonomyRef,
  InvalidFootnoteLink,
  EmptyScenario,
  UnexpectedElement,
  MissingId,
  InvalidOptions,
};

std::string_view to_string(ParseErrorCode code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, SourceLocation location, const std::string& message);

  ParseErrorCode code() const noexcept { return code_; }
  SourceLocation location() const noexcept { return location_; }

 private:
  ParseErrorCode code_;
  SourceLocation location_;
};

/// Builds an Instance from the xbrl element at `tree.root`. Strict mode throws
/// ParseError on the first blocking problem. Lenient mode drops the offending
/// construct and records a finding for: items without contextRef (CTX-002),
/// contexts with non-ISO 8601 dates (PER-001) or reversed durations (PER-002),
/// empty scenarios (SCN-001), and footnote arcs to unknown labels (FTN-001).
ParseOutcome parse_instance(const XmlTree& tree, const ParseOptions& options = {});
ParseOutcome parse_instance(const XmlElement& xbrl_root, const ParseOptions& options = {});

/// Parses an xbrli:period element. Throws ParseError with InvalidIso8601,
/// InvalidPeriodShape, or StartAfterEnd.
Period parse_period(const XmlElement& element);

/// Parses an xbrli:unit element. Throws ParseError with EmptyUnit,
/// MalformedDivide, or UnboundPrefix.
Unit parse_unit(const XmlElement& element);

/// Result of parsing one xbrl element found inside a larger document.
struct EmbeddedInstance {
  SourceLocation location;
  std::optional<ParseOutcome> outcome;
  std::optional<ParseError> error;
};

struct EmbeddedScan {
  std::vector<EmbeddedInstance> instances;  // outermost xbrl elements, document order
  std::vector<Finding> findings;            // EMB-001 per nested xbrl element
};

EmbeddedScan find_instances(const XmlTree& tree, const ParseOptions& options = {});

/// Emits a namespace-well-formed instance document.
std::string serialize(const Instance& instance);

}  // namespace xbrlcore
