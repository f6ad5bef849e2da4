#pragma once

#include <string>
#include <string_view>

#include "xbrlcore/qname.hpp"

namespace xbrlcore {

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity s);

/// One diagnostic. `code` comes from the rule catalog (see validation.hpp).
struct Finding {
  std::string code;
  Severity severity = Severity::Error;
  std::string message;
  SourceLocation location;
  std::string subject;

  friend bool operator==(const Finding&, const Finding&) = default;
};

}  // namespace xbrlcore
