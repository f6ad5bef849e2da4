#pragma once

#include <map>
#include <optional>
#include <string>

#include "xbrlcore/qname.hpp"

namespace xbrlcore {

enum class ItemKind { Item, Tuple, Unknown };
enum class DataKind { Monetary, Shares, Numeric, NonNumeric, Unknown };
enum class PeriodType { Instant, Duration, Unknown };
enum class Balance { Debit, Credit, None };

/// A reporting concept declared in a taxonomy schema.
struct Concept {
  QName qname;
  ItemKind item_kind = ItemKind::Unknown;
  DataKind data_kind = DataKind::Unknown;
  PeriodType period_type = PeriodType::Unknown;
  Balance balance = Balance::None;
  bool abstract = false;
  std::optional<QName> substitution_group;
  std::optional<QName> type;
  std::string source_uri;

  friend bool operator==(const Concept&, const Concept&) = default;
};

class ConceptRegistry {
 public:
  /// Inserts unless the QName is already present; returns false on conflict.
  bool add(Concept c);

  /// Exact QName match; nullptr when absent.
  const Concept* lookup(const QName& qname) const;

  std::size_t size() const { return by_qname_.size(); }
  const std::map<QName, Concept>& concepts() const { return by_qname_; }

  // Substitution groups that head at another registered concept inherit its
  // item kind; repeated until nothing changes.
  void resolve_substitution_chains();

  friend bool operator==(const ConceptRegistry&, const ConceptRegistry&) = default;

 private:
  std::map<QName, Concept> by_qname_;
};

std::string_view to_string(ItemKind k);
std::string_view to_string(DataKind k);
std::string_view to_string(PeriodType k);
std::string_view to_string(Balance k);

}  // namespace xbrlcore
