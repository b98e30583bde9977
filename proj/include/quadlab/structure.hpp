#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadlab/groupoid.hpp"

namespace quadlab {

/// A level-property or partition check failed: the input is not quadratical
/// or something upstream is wrong.
class StructureError : public Error {
 public:
  using Error::Error;
};

struct BasePoint {
  Element a = 0;
  Element b = 0;
  Element aba = 0;  // (a·b)·a = a·(b·a)
};

/// x1·x2 = x2·x3 = x3·x4 = x4·x1 = base.
struct FourCycle {
  std::array<Element, 4> members{};
  Element base = 0;
};

struct CycleDecomposition {
  Element base = 0;
  std::vector<FourCycle> cycles;  // disjoint, covering everything but base
};

/// (n1, n2, n3, n4) of one level.
using Level = std::array<Element, 4>;

struct HFamily {
  BasePoint base;
  std::vector<Level> levels;  // levels[0] = H1 = (a, ab, ba, b)
};

struct FormQn {
  Element a = 0;
  Element b = 0;
  std::size_t n = 0;
};

struct BranchProfile {
  int branch = 0;  // k in 1..4 with aba·a = nk
  std::vector<std::pair<std::string, Element>> derived;
};

// All operations below require a quadratical input and throw
// PreconditionError otherwise.

[[nodiscard]] BasePoint base_point(const Groupoid& g, Element a, Element b);

/// The cycle found by solving base = x1·x2, base = x2·x3, base = x3·x4.
[[nodiscard]] FourCycle four_cycle_through(const Groupoid& g, Element base, Element x1);

[[nodiscard]] CycleDecomposition cycle_decomposition(const Groupoid& g, Element base);

/// Levels H1..H{depth}. Every level is checked against the level identities
/// (products inside a level, the action of aba on both sides, distinctness,
/// aba not a member, and the 4-cycle (n1, n3, n4, n2) on aba); a failure
/// throws StructureError.
[[nodiscard]] HFamily h_family(const Groupoid& g, Element a, Element b, std::size_t depth);

/// First ordered pair (a, b) with G = {aba} ∪ H1 ∪ … ∪ Hn, all disjoint.
[[nodiscard]] std::optional<FormQn> detect_form_Qn(const Groupoid& g);

/// Position in level L of the element equal to the starred Lk (k in 1..4).
[[nodiscard]] int star_position(std::size_t level, int k) noexcept;

/// The levels computed in the dual for the same pair; checked against the
/// star correspondence, StructureError on mismatch.
[[nodiscard]] std::vector<Level> star_elements(const Groupoid& g, Element a, Element b,
                                               std::size_t depth);

/// Requires g of form Qn (n >= 2) for the pair (a, b). Determines which nk
/// equals aba·a and checks every product the branch forces.
[[nodiscard]] BranchProfile branch_profile(const Groupoid& g, Element a, Element b);

/// The products forced by each branch (1..4). Entries are positions 1..4
/// within Hn, H1 or H(n-1) as noted.
struct BranchRow {
  std::array<int, 7> level;  // Hn: aba·ab, aba·ba, aba·b, a·aba, ab·aba, ba·aba, b·aba
  std::array<int, 4> base;   // H1: n1·n2, n2·n4, n3·n1, n4·n3
  std::array<int, 4> deep;   // Hn: 11·34, 23·14, 34·14, 14·21
  int previous;              // r with 11·n{branch} = (n-1)r = nr·11
};
[[nodiscard]] const BranchRow& branch_row(int branch);

}  // namespace quadlab
