#pragma once

// Random instance generator for round-trip and property tests.

#include <cstdint>
#include <random>
#include <string>

#include "xbrlcore/model.hpp"

namespace gen {

struct Shape {
  int max_contexts = 5;
  int max_units = 3;
  int max_facts = 12;
  int max_tuple_depth = 3;
  int max_footnote_links = 2;
};

// Valid by construction: every contextRef/unitRef resolves, durations are
// ordered, footnote arcs connect existing labels.
xbrlcore::Instance random_instance(std::mt19937& rng, const Shape& shape = {});

// Rewrites roughly `fraction` of item contextRefs to ids that do not exist.
// Returns how many were changed.
int corrupt_context_refs(xbrlcore::Instance& instance, std::mt19937& rng, double fraction);

inline constexpr const char* kGenNs = "urn:example:generated";
inline constexpr const char* kGenNs2 = "http://example.org/other-taxonomy";

}  // namespace gen
