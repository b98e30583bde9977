#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadlab {

/// Element of a finite groupoid. Stored zero-based; every textual surface
/// (table files, CLI, traces) shows elements one-based or by name.
using Element = std::uint16_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A finite groupoid given by its Cayley table. Row r, column c holds r·c.
/// Immutable after construction.
class Groupoid {
 public:
  Groupoid() = default;

  /// Throws Error when `table` is not order×order, an entry is out of range,
  /// or `names` is non-empty with the wrong count or a duplicate.
  Groupoid(std::size_t order, std::vector<Element> table,
           std::vector<std::string> names = {});

  [[nodiscard]] std::size_t order() const noexcept { return order_; }

  /// Unchecked product lookup.
  [[nodiscard]] Element operator()(Element x, Element y) const noexcept {
    return table_[static_cast<std::size_t>(x) * order_ + y];
  }

  /// Checked product lookup.
  [[nodiscard]] Element product(Element x, Element y) const;

  [[nodiscard]] std::span<const Element> row(Element x) const noexcept {
    return {table_.data() + static_cast<std::size_t>(x) * order_, order_};
  }
  [[nodiscard]] std::span<const Element> cells() const noexcept { return table_; }

  [[nodiscard]] bool has_names() const noexcept { return !names_.empty(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  /// Display name: the declared name, or the one-based index.
  [[nodiscard]] std::string name(Element x) const;

  /// Resolves a declared name first, then a one-based integer.
  [[nodiscard]] std::optional<Element> find(std::string_view token) const;

  [[nodiscard]] Groupoid with_names(std::vector<std::string> names) const;
  [[nodiscard]] Groupoid without_names() const;

  /// Table and names equal.
  friend bool operator==(const Groupoid&, const Groupoid&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<std::string> names_;
};

/// Same order and identical Cayley table; names ignored.
[[nodiscard]] bool same_table(const Groupoid& a, const Groupoid& b) noexcept;

// ---------------------------------------------------------------------------
// Text format
//
//   line 1: order n
//   optional "#names: t1 ... tn"
//   n rows of n entries, each a one-based integer or a declared name
// ---------------------------------------------------------------------------

[[nodiscard]] Groupoid parse_table(std::istream& in);
[[nodiscard]] Groupoid parse_table(std::string_view text);
void serialize_table(const Groupoid& g, std::ostream& out);
[[nodiscard]] std::string serialize_table(const Groupoid& g);

[[nodiscard]] Groupoid read_table_file(const std::string& path);
void write_table_file(const Groupoid& g, const std::string& path);

// ---------------------------------------------------------------------------
// Structural operations
// ---------------------------------------------------------------------------

[[nodiscard]] Groupoid dual(const Groupoid& g);

/// Componentwise product; pair (g, h) has index g·|H| + h.
[[nodiscard]] Groupoid direct_product(const Groupoid& g, const Groupoid& h);

/// Applies a bijection: result[map[x]][map[y]] = map[x·y]. Names follow
/// their elements.
[[nodiscard]] Groupoid relabel(const Groupoid& g, std::span<const Element> map);

/// Sorted element set of the smallest product-closed subset containing `seed`.
[[nodiscard]] std::vector<Element> generated_subgroupoid(const Groupoid& g,
                                                         std::span<const Element> seed);

/// Whether some pair of distinct elements generates g.
[[nodiscard]] bool is_two_generated(const Groupoid& g);
/// Whether every pair of distinct elements generates g.
[[nodiscard]] bool generated_by_any_two(const Groupoid& g);

/// A bijection map with map(x·y) = map(x)∘map(y).
struct Isomorphism {
  std::vector<Element> map;

  [[nodiscard]] Isomorphism inverse() const;
  /// (this then other): x ↦ other(this(x)).
  [[nodiscard]] Isomorphism then(const Isomorphism& other) const;
  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

[[nodiscard]] bool is_isomorphism(const Groupoid& g, const Groupoid& h,
                                  const Isomorphism& iso);

/// First witness in lexicographic backtracking order, or nullopt.
[[nodiscard]] std::optional<Isomorphism> find_isomorphism(const Groupoid& g,
                                                          const Groupoid& h);

/// Every automorphism of g, in lexicographic order of maps.
[[nodiscard]] std::vector<Isomorphism> automorphisms(const Groupoid& g);

/// Canonical representative of the isomorphism class of g (names dropped).
[[nodiscard]] Groupoid canonical_form(const Groupoid& g);

/// The relabeling that turns g into canonical_form(g).
[[nodiscard]] Isomorphism canonical_labeling(const Groupoid& g);

}  // namespace quadlab
