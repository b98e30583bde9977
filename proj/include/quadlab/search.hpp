#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadlab/construct.hpp"
#include "quadlab/groupoid.hpp"

namespace quadlab {

struct EnumerationResult {
  std::size_t order = 0;
  std::vector<Groupoid> representatives;  // canonical forms, sorted by table
  std::size_t raw_count = 0;              // tables reached before deduplication
  bool complete = true;                   // false when the time budget ran out
};

struct SearchOptions {
  double budget_secs = 0;  // 0 = unlimited
};

/// Reads QUADLAB_BUDGET_SECS; 0 when unset or unparsable.
[[nodiscard]] double budget_from_env();

/// Backtracking over idempotent Latin squares with bookend and medial
/// propagation; duplicates removed by canonical_form.
[[nodiscard]] EnumerationResult enumerate_quadratical(std::size_t n, const SearchOptions& opt = {});

/// An affine quadratical quasigroup found by the classifier, with its data.
struct AffineClass {
  AffineSpec spec;
  Groupoid table;  // canonical form
};

/// Every quadratical quasigroup x·y = φx + (1-φ)y over an abelian group of
/// order n, one per isomorphism class. Requires n odd and n <= 100.
[[nodiscard]] std::vector<AffineClass> classify_affine_specs(std::size_t n);
[[nodiscard]] EnumerationResult classify_affine(std::size_t n);

/// One root of 2φ² - 2φ + 1 per conjugacy class on Z_p^m, from the rank
/// formula used when the endomorphism space is too large to scan: m + 1
/// diagonal classes when the polynomial splits mod p, one block-diagonal
/// class for even m otherwise. Matrices are row-major m×m.
[[nodiscard]] std::vector<std::vector<long>> elementary_affine_roots(long p, std::size_t m);

/// Invariant-factor decompositions of the abelian groups of order n.
[[nodiscard]] std::vector<std::vector<std::size_t>> abelian_groups(std::size_t n);

struct TranslatabilityHit {
  std::size_t k = 0;
  Groupoid table;      // the forced table, k-translatable as ordered
  Groupoid canonical;  // canonical_form(table)
};

struct TranslatabilityReport {
  std::size_t order = 0;
  std::vector<TranslatabilityHit> hits;
};

/// k = 1..n for which the forced idempotent k-translatable table of order n
/// is quadratical.
[[nodiscard]] TranslatabilityReport scan_translatable(std::size_t n);

/// Every k for which some ordering of g is k-translatable. Requires g
/// idempotent.
[[nodiscard]] std::vector<std::size_t> detect_translatable(const Groupoid& g);

/// Exhaustive version of detect_translatable over all n! orderings.
[[nodiscard]] std::vector<std::size_t> detect_translatable_by_orderings(const Groupoid& g);

enum class SpectrumVerdict { impossible, impossible_by_classification, exists, unknown };

struct SpectrumEntry {
  std::size_t order = 0;
  SpectrumVerdict verdict = SpectrumVerdict::unknown;
  std::string witness;  // how existence or nonexistence was settled
};

[[nodiscard]] std::string_view to_string(SpectrumVerdict v) noexcept;

/// Orders 1..n_max (n_max <= 100).
[[nodiscard]] std::vector<SpectrumEntry> spectrum_scan(std::size_t n_max);

/// Writes one table file per representative and an index file
/// "order <n> count <c> representatives: <files>" into `dir`. Returns the
/// index file path.
std::string write_enumeration(const EnumerationResult& result, const std::string& dir);

}  // namespace quadlab
