#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadlab/groupoid.hpp"
#include "quadlab/identity.hpp"

namespace quadlab {

/// Testable properties. Each tag is one quantified condition over the table.
enum class PropertyKind {
  idempotent,          // x*x = x
  elastic,             // x*(y*x) = (x*y)*x
  strongly_elastic,    // x*(y*x) = (x*y)*x = (y*x)*y
  bookend,             // (y*x)*(x*y) = x
  left_distributive,   // x*(y*z) = (x*y)*(x*z)
  right_distributive,  // (x*y)*z = (x*z)*(y*z)
  medial,              // (x*y)*(z*w) = (x*z)*(y*w)
  identity8,           // x*(y*(y*x)) = ((x*y)*x)*y
  identity9,           // ((x*y)*y)*x = y*(x*(y*x))
  alterable,           // x*y = z*w  iff  y*z = w*x
  property_A,          // (x*y)*x = (z*x)*(y*z)
  left_cancellative,   // x*y = x*z  =>  y = z
  right_cancellative,  // y*x = z*x  =>  y = z
  left_solvable,       // x*a = b has a unique solution x
  right_solvable,      // a*x = b has a unique solution x
  quasigroup,          // left and right solvable
  nowhere_commutative, // x*y = y*x  =>  x = y
  left_simple,         // no proper left ideal
  right_simple,        // no proper right ideal
  simple,              // no proper two-sided ideal
};

inline constexpr PropertyKind kAllProperties[] = {
    PropertyKind::idempotent,         PropertyKind::elastic,
    PropertyKind::strongly_elastic,   PropertyKind::bookend,
    PropertyKind::left_distributive,  PropertyKind::right_distributive,
    PropertyKind::medial,             PropertyKind::identity8,
    PropertyKind::identity9,          PropertyKind::alterable,
    PropertyKind::property_A,         PropertyKind::left_cancellative,
    PropertyKind::right_cancellative, PropertyKind::left_solvable,
    PropertyKind::right_solvable,     PropertyKind::quasigroup,
    PropertyKind::nowhere_commutative, PropertyKind::left_simple,
    PropertyKind::right_simple,       PropertyKind::simple,
};

[[nodiscard]] std::string_view to_string(PropertyKind p) noexcept;
/// Throws ParseError for an unknown tag.
[[nodiscard]] PropertyKind parse_property(std::string_view tag);

/// The defining equations of an identity-type property; empty otherwise.
[[nodiscard]] const std::vector<Identity>& identities_of(PropertyKind p);

/// The equations used by the completion and search engines: every identity
/// a quadratical quasigroup is known to satisfy.
[[nodiscard]] const std::vector<Identity>& quadratical_identities();

/// A concrete violation.
struct Witness {
  std::vector<Element> assignment;  // values of the violated condition's variables
  Element lhs = 0;
  Element rhs = 0;
  std::string detail;               // human readable, uses element names
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  explicit operator bool() const noexcept { return holds; }
};

[[nodiscard]] Verdict holds(const Groupoid& g, PropertyKind p);
[[nodiscard]] Verdict holds(const Groupoid& g, const Identity& id);

/// Characterizations of "quadratical".
enum class QuadraticalMethod {
  definition,  // right solvable with property A
  thm2_11,     // idempotent, bookend, medial
  thm2_16,     // elastic, bookend, medial
  thm2_20,     // elastic, medial, idempotent, alterable
  thm2_24,     // left and right distributive, bookend, alterable
  cor2_5,      // medial, idempotent, property A
  all,         // every one of the above; they must agree
};

inline constexpr QuadraticalMethod kSingleMethods[] = {
    QuadraticalMethod::definition, QuadraticalMethod::thm2_11, QuadraticalMethod::thm2_16,
    QuadraticalMethod::thm2_20,    QuadraticalMethod::thm2_24, QuadraticalMethod::cor2_5,
};

[[nodiscard]] std::string_view to_string(QuadraticalMethod m) noexcept;
[[nodiscard]] QuadraticalMethod parse_method(std::string_view tag);
[[nodiscard]] std::span<const PropertyKind> method_properties(QuadraticalMethod m);

/// Raised by method=all when the characterizations disagree, which can only
/// mean a bug in one of the checkers.
class CharacterizationDisagreement : public Error {
 public:
  using Error::Error;
};

[[nodiscard]] bool is_quadratical(const Groupoid& g,
                                  QuadraticalMethod method = QuadraticalMethod::thm2_11);

/// x*(y*z) = (x*y)*z exactly when x = z. Requires a quadratical input.
[[nodiscard]] bool check_assoc_boundary(const Groupoid& g);

struct ImplicationVerdict {
  bool counterexample_found = false;
  std::size_t max_order = 0;               // orders 1..max_order were swept
  std::optional<Groupoid> counterexample;
  std::vector<PropertyKind> violated;      // conclusions failing on it
  std::size_t models_checked = 0;          // groupoids meeting the hypotheses
};

/// Sweeps every groupoid of order <= max_order that satisfies `hypotheses`
/// (up to the symmetry the generator breaks) and reports the first one that
/// violates some conclusion.
[[nodiscard]] ImplicationVerdict check_implication(std::span<const PropertyKind> hypotheses,
                                                   std::span<const PropertyKind> conclusions,
                                                   std::size_t max_order);

}  // namespace quadlab
