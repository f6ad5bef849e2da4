#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace xbrlcore {

/// A calendar date (YYYY-MM-DD) or date-time (YYYY-MM-DDThh:mm:ss[.fff]),
/// either with an optional zone (Z or +hh:mm / -hh:mm).
struct DateOrDateTime {
  int year = 0;
  int month = 0;
  int day = 0;
  bool has_time = false;
  int hour = 0;
  int minute = 0;
  int second = 0;
  std::int64_t nanosecond = 0;
  std::optional<int> zone_offset_minutes;
  std::string lexical;

  friend bool operator==(const DateOrDateTime&, const DateOrDateTime&) = default;
};

/// Parses one lexical value. Returns nullopt for anything that is not a valid
/// date or date-time, including impossible calendar dates and out-of-range
/// clock or zone fields. Hour 24 is accepted only as 24:00:00.
std::optional<DateOrDateTime> parse_iso8601(std::string_view text);

enum class PeriodEdge { Start, End };

struct TimelinePoint {
  std::int64_t seconds = 0;
  std::int64_t nanoseconds = 0;

  friend bool operator==(const TimelinePoint&, const TimelinePoint&) = default;
  friend auto operator<=>(const TimelinePoint&, const TimelinePoint&) = default;
};

/// Position of a value on a common timeline, measured from
/// 1970-01-01T00:00:00Z. A bare date sits at the start of its day in the Start
/// role and at the start of the following day in the End role. Zoneless values
/// are read as UTC.
TimelinePoint timeline_position(const DateOrDateTime& value, PeriodEdge edge);

/// True when exactly one of the two values carries a zone, which makes their
/// comparison rest on the UTC assumption for the other.
bool mixes_zones(const DateOrDateTime& a, const DateOrDateTime& b);

}  // namespace xbrlcore
