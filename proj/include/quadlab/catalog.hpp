#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quadlab/construct.hpp"
#include "quadlab/groupoid.hpp"

namespace quadlab {

/// A table written out in the text format of groupoid.hpp.
struct LiteralTable {
  std::string text;
};

/// Built from other catalog entries.
struct DerivedTable {
  enum class Op { dual, product } op = Op::dual;
  std::string left;
  std::string right;  // product only
};

using CatalogSource =
    std::variant<BranchChoice, TranslatableSeed, AffineSpec, LiteralTable, DerivedTable>;

/// A named check and the value it must produce. Checks are property tags,
/// "order", "quadratical", "form" (n or "none") and "translatable_as_ordered"
/// (the k for which the table is k-translatable in its own ordering, or
/// "none").
struct Expectation {
  std::string check;
  std::string value;
};

struct CatalogEntry {
  std::string name;
  CatalogSource source;
  std::vector<std::string> names;  // element names for translatable and affine sources
  std::vector<Expectation> expected;
  std::string description;
};

class UnknownEntry : public Error {
 public:
  using Error::Error;
};

[[nodiscard]] const std::vector<CatalogEntry>& catalog();
[[nodiscard]] const CatalogEntry& catalog_entry(std::string_view name);

/// Builds (once) and returns the entry's table. Throws UnknownEntry.
[[nodiscard]] const Groupoid& catalog_get(std::string_view name);

/// Value of one named check on g.
[[nodiscard]] std::string evaluate_check(const Groupoid& g, const std::string& check);

/// Every failed expectation, as "<entry>: <check> = <got>, expected <value>".
[[nodiscard]] std::vector<std::string> catalog_self_test();

}  // namespace quadlab
