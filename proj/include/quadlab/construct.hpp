#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadlab/groupoid.hpp"
#include "quadlab/propagation.hpp"

namespace quadlab {

// ---------------------------------------------------------------------------
// Completion of a form-Qn skeleton
// ---------------------------------------------------------------------------

/// Asserted value of aba·a: the element n{target} of the last level.
struct BranchChoice {
  std::size_t n = 1;
  int target = 1;  // 1..4
};

/// Parses "n1".."n4".
[[nodiscard]] int parse_branch(std::string_view token);

/// Elements of the skeleton, in table order: 11, 12, 13, 14, aba, 21, …, n4.
/// Level 1 is named a, ab, ba, b.
[[nodiscard]] std::vector<std::string> form_names(std::size_t n);
[[nodiscard]] Element form_element(std::size_t level, int k);
inline constexpr Element kFormAba = 4;

struct CompletionOptions {
  bool reverse_rules = false;      // apply the deduction rules in reverse priority
  std::size_t max_solutions = 8;   // stop the case analysis after this many
  bool record_trace = true;
};

struct CompletionResult {
  BranchChoice choice;
  std::vector<std::string> names;
  std::optional<Groupoid> table;  // first completion found
  std::size_t solutions = 0;
  bool exhausted = true;          // false when max_solutions cut the search
  std::size_t cases = 0;          // case splits opened
  std::vector<int> fixpoint;      // cells after the first propagation, -1 unknown
  Trace trace;

  [[nodiscard]] bool contradiction() const noexcept { return solutions == 0 && exhausted; }
};

/// The deduction rules in priority order: idempotency, cancellation,
/// bookend, elasticity, distributivity, mediality, alterability, the two
/// remaining identities, then the identities generated on the left and on
/// the right by multiplying with `aba`.
[[nodiscard]] Propagator completion_propagator(Element aba, bool reverse = false);

/// Fills the Cayley table of a putative form-Qn quadratical quasigroup from
/// its defining products, the level identities and the branch choice. When
/// propagation stalls, the cell with fewest admissible values is split into
/// cases. Every completion is re-verified with is_quadratical(all).
[[nodiscard]] CompletionResult complete_form_Qn(const BranchChoice& choice,
                                                const CompletionOptions& options = {});

/// Re-derives every step of a completion trace from its premises.
[[nodiscard]] std::optional<std::string> replay_completion(const CompletionResult& result);

// ---------------------------------------------------------------------------
// Translatable tables
// ---------------------------------------------------------------------------

/// Row q is row q-1 shifted right by k: T(q, j) = first_row[(j - q·k) mod n]
/// (zero-based).
struct TranslatableSeed {
  std::size_t order = 1;
  std::size_t k = 1;
  std::vector<Element> first_row;  // zero-based entries
};

[[nodiscard]] Groupoid from_translatable(const TranslatableSeed& seed);

/// Whether the table is k-translatable in its present element order.
[[nodiscard]] bool is_k_translatable(const Groupoid& g, std::size_t k);

/// The only idempotent k-translatable table of order n, if any: it exists
/// iff gcd(k-1, n) = 1, with first_row[q·(1-k) mod n] = q.
[[nodiscard]] std::optional<Groupoid> forced_idempotent_translatable(std::size_t n,
                                                                     std::size_t k);

// ---------------------------------------------------------------------------
// Affine construction
// ---------------------------------------------------------------------------

/// x·y = φ(x) + (1-φ)(y) on Z_{d1} × … × Z_{dm}. phi[i][j] is the
/// coefficient of x_j in (φx)_i, reduced mod d_i.
struct AffineSpec {
  std::vector<std::size_t> factors;
  std::vector<std::vector<long>> phi;
};

/// Element index of a tuple: mixed radix, first factor most significant.
[[nodiscard]] std::size_t affine_index(const std::vector<std::size_t>& factors,
                                       const std::vector<long>& tuple);

/// Throws Error unless φ is a well-defined automorphism with
/// 2φ² - 2φ + 1 = 0; the result is checked idempotent, bookend and medial.
[[nodiscard]] Groupoid build_affine(const AffineSpec& spec);

/// Whether φ is a well-defined endomorphism, invertible, with
/// 2φ² - 2φ + 1 = 0.
[[nodiscard]] bool affine_spec_valid(const AffineSpec& spec, std::string* why = nullptr);

}  // namespace quadlab
