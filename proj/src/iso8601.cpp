#include "xbrlcore/iso8601.hpp"

#include <chrono>

namespace xbrlcore {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  // Exactly `width` ASCII digits.
  std::optional<int> digits(int width) {
    if (s_.size() - pos_ < static_cast<std::size_t>(width)) return std::nullopt;
    int v = 0;
    for (int i = 0; i < width; ++i) {
      const char c = s_[pos_ + static_cast<std::size_t>(i)];
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  // One or more digits scaled to nanoseconds; digits past the ninth are dropped.
  std::optional<std::int64_t> fraction() {
    std::int64_t v = 0;
    int n = 0;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      if (n < 9) {
        v = v * 10 + (s_[pos_] - '0');
        ++n;
      }
      ++pos_;
    }
    if (n == 0) return std::nullopt;
    for (int i = n; i < 9; ++i) v *= 10;
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<DateOrDateTime> parse_iso8601(std::string_view text) {
  DateOrDateTime out;
  out.lexical = std::string(text);
  Cursor c(text);

  const auto year = c.digits(4);
  if (!year || !c.eat('-')) return std::nullopt;
  const auto month = c.digits(2);
  if (!month || !c.eat('-')) return std::nullopt;
  const auto day = c.digits(2);
  if (!day || *year == 0) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                                        std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;
  out.year = *year;
  out.month = *month;
  out.day = *day;

  if (c.eat('T')) {
    const auto hour = c.digits(2);
    if (!hour || !c.eat(':')) return std::nullopt;
    const auto minute = c.digits(2);
    if (!minute || !c.eat(':')) return std::nullopt;
    const auto second = c.digits(2);
    if (!second) return std::nullopt;
    std::int64_t nanos = 0;
    if (c.eat('.')) {
      const auto f = c.fraction();
      if (!f) return std::nullopt;
      nanos = *f;
    }
    if (*minute > 59 || *second > 59) return std::nullopt;
    if (*hour > 24 || (*hour == 24 && (*minute != 0 || *second != 0 || nanos != 0))) return std::nullopt;
    out.has_time = true;
    out.hour = *hour;
    out.minute = *minute;
    out.second = *second;
    out.nanosecond = nanos;
  }

  if (c.eat('Z')) {
    out.zone_offset_minutes = 0;
  } else if (c.peek('+') || c.peek('-')) {
    const int sign = c.eat('+') ? 1 : (c.eat('-'), -1);
    const auto zh = c.digits(2);
    if (!zh || !c.eat(':')) return std::nullopt;
    const auto zm = c.digits(2);
    if (!zm || *zm > 59 || *zh > 14 || (*zh == 14 && *zm != 0)) return std::nullopt;
    out.zone_offset_minutes = sign * (*zh * 60 + *zm);
  }
  if (!c.done()) return std::nullopt;
  return out;
}

TimelinePoint timeline_position(const DateOrDateTime& value, PeriodEdge edge) {
  using namespace std::chrono;
  const sys_days days{year_month_day{year{value.year}, month{static_cast<unsigned>(value.month)},
                                     day{static_cast<unsigned>(value.day)}}};
  std::int64_t seconds = static_cast<std::int64_t>(days.time_since_epoch().count()) * 86400;
  if (value.has_time) {
    seconds += value.hour * 3600 + value.minute * 60 + value.second;
  } else if (edge == PeriodEdge::End) {
    seconds += 86400;
  }
  seconds -= static_cast<std::int64_t>(value.zone_offset_minutes.value_or(0)) * 60;
  return {seconds, value.has_time ? value.nanosecond : 0};
}

bool mixes_zones(const DateOrDateTime& a, const DateOrDateTime& b) {
  return a.zone_offset_minutes.has_value() != b.zone_offset_minutes.has_value();
}

}  // namespace xbrlcore
