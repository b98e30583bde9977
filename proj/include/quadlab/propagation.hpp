#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadlab/groupoid.hpp"
#include "quadlab/identity.hpp"

namespace quadlab {

struct Cell {
  Element row = 0;
  Element col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A Cayley table under construction. Known cells never change except by
/// undoing to an earlier mark. Optionally rows and/or columns are kept
/// injective (left/right cancellation), in which case an assignment that
/// repeats a value in its row or column is refused.
class PartialTable {
 public:
  static constexpr int kUnknown = -1;
  static constexpr std::size_t kMaxOrder = 64;

  PartialTable(std::size_t order, bool rows_injective, bool cols_injective);

  [[nodiscard]] std::size_t order() const noexcept { return n_; }
  [[nodiscard]] bool rows_injective() const noexcept { return rows_inj_; }
  [[nodiscard]] bool cols_injective() const noexcept { return cols_inj_; }

  [[nodiscard]] int get(Element r, Element c) const noexcept { return cells_[r * n_ + c]; }
  [[nodiscard]] bool known(Element r, Element c) const noexcept { return get(r, c) >= 0; }

  /// Column holding v in row r, or -1.
  [[nodiscard]] int find_in_row(Element r, Element v) const noexcept;
  /// Row holding v in column c, or -1.
  [[nodiscard]] int find_in_col(Element c, Element v) const noexcept;

  /// Values still admissible at (r, c) under the injectivity constraints.
  [[nodiscard]] std::uint64_t domain(Element r, Element c) const noexcept;

  /// The cell that already holds v in row r (or column c) when injectivity
  /// forbids placing v at (r, c).
  [[nodiscard]] std::optional<Cell> clash(Element r, Element c, Element v) const noexcept;

  /// Precondition: (r, c) unknown and no clash.
  void set(Element r, Element c, Element v);

  [[nodiscard]] std::size_t mark() const noexcept { return trail_.size(); }
  void undo(std::size_t mark);

  [[nodiscard]] std::size_t unknown_count() const noexcept { return n_ * n_ - trail_.size(); }
  [[nodiscard]] bool complete() const noexcept { return unknown_count() == 0; }
  [[nodiscard]] std::span<const std::uint32_t> trail() const noexcept { return trail_; }

  /// Precondition: complete().
  [[nodiscard]] Groupoid to_groupoid(std::vector<std::string> names = {}) const;

 private:
  std::size_t n_;
  bool rows_inj_, cols_inj_;
  std::vector<int> cells_;
  std::vector<std::uint64_t> row_vals_, col_vals_;
  std::vector<std::uint32_t> trail_;  // cell indices in assignment order
};

// ---------------------------------------------------------------------------
// Deduction traces
// ---------------------------------------------------------------------------

struct TraceEntry {
  enum class Kind { seed, deduction, contradiction, case_open, case_close };
  Kind kind = Kind::deduction;
  Cell cell;
  Element value = 0;
  std::string rule;            // rule label
  std::vector<Element> args;   // instance variables, rendered after the label
  std::string suffix;          // e.g. "+left_cancellation"
  std::vector<Cell> premises;
  std::string message;         // contradiction text after "CONTRADICTION at (r,c): "
  bool whole_row = false;      // contradiction concerns row `cell.row` as a whole
  bool whole_col = false;      // ... or column `cell.col`
  bool seeded = false;         // raised while placing a starting fact
};

/// Ordered record of a propagation run, rendered in the line format
///   cell (r,c) := v BY <rule> FROM <cells>
///   CONTRADICTION at (r,c): v1 ≠ v2 BY <rule> FROM <cells>
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::vector<std::string> names) : names_(std::move(names)) {}

  void push(TraceEntry e) { entries_.push_back(std::move(e)); }
  [[nodiscard]] const std::vector<TraceEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] std::string name(Element e) const;
  [[nodiscard]] std::string cell(Cell c) const;
  [[nodiscard]] std::string rule(const TraceEntry& e) const;
  [[nodiscard]] std::string render_line(const TraceEntry& e) const;
  [[nodiscard]] std::string render() const;
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<TraceEntry> entries_;
};

/// The first contradiction a propagation run hit.
struct Contradiction {
  TraceEntry entry;
};

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

/// Per-run state handed to rules. A rule announces the instance it is
/// working on with begin(); derive() and contradict() attribute to it.
class DeductionContext {
 public:
  DeductionContext(PartialTable& table, Trace* trace) : table_(table), trace_(trace) {}

  [[nodiscard]] PartialTable& table() noexcept { return table_; }
  [[nodiscard]] bool logging() const noexcept { return trace_ != nullptr; }

  void begin(const std::string& rule, std::span<const Element> args = {}) noexcept;

  /// Records (cell := v). Returns false when this contradicts the table; the
  /// contradiction is then stored and the run must stop.
  bool derive(Cell cell, Element v, std::span<const Cell> premises);
  /// Like derive, logged as an unjustified starting fact.
  bool seed(Cell cell, Element v, const std::string& rule);
  /// Records an outright contradiction for the current instance; returns false.
  bool contradict(Cell cell, std::string message, std::vector<Cell> premises,
                  bool whole_row = false, bool whole_col = false);

  [[nodiscard]] bool changed() const noexcept { return changed_; }
  [[nodiscard]] bool failed() const noexcept { return contradiction_.has_value(); }
  [[nodiscard]] const std::optional<Contradiction>& contradiction() const noexcept {
    return contradiction_;
  }
  void reset_changed() noexcept { changed_ = false; }

  /// Most recent cell set by derive().
  [[nodiscard]] const std::optional<std::pair<Cell, Element>>& last_derived() const noexcept {
    return last_;
  }

 private:
  [[nodiscard]] TraceEntry entry(TraceEntry::Kind kind, Cell cell) const;
  bool fail(TraceEntry e);
  bool record(Cell cell, Element v, std::span<const Cell> premises, TraceEntry::Kind kind);

  PartialTable& table_;
  Trace* trace_;
  const std::string* rule_ = nullptr;
  std::array<Element, 4> args_{};
  std::size_t arg_count_ = 0;
  bool changed_ = false;
  std::optional<Contradiction> contradiction_;
  std::optional<std::pair<Cell, Element>> last_;
};

class Rule {
 public:
  virtual ~Rule() = default;
  [[nodiscard]] virtual const std::string& name() const = 0;
  /// Whether trace entries labelled `label` come from this rule.
  [[nodiscard]] virtual bool produces(const std::string& label) const { return label == name(); }
  /// One pass over every instance. Returns false on contradiction.
  virtual bool sweep(DeductionContext& ctx) const = 0;
  /// Re-runs the single instance behind `e`.
  virtual bool replay(DeductionContext& ctx, const TraceEntry& e) const = 0;
};

/// lhs = rhs for all assignments, with optional pinned variables. When one
/// side is known and the other is a product whose arguments are known, the
/// cell is filled; through an injective row or column the solving continues
/// into unknown arguments.
class IdentityRule final : public Rule {
 public:
  explicit IdentityRule(Identity id, std::vector<int> pinned = {}, std::string label = {});

  [[nodiscard]] const std::string& name() const override { return label_; }
  bool sweep(DeductionContext& ctx) const override;
  bool replay(DeductionContext& ctx, const TraceEntry& e) const override;

  bool apply(DeductionContext& ctx, const Element* vars) const;
  [[nodiscard]] const Identity& identity() const noexcept { return id_; }
  [[nodiscard]] const std::vector<int>& pinned() const noexcept { return pinned_; }

 private:
  Identity id_;
  std::vector<int> pinned_;  // per variable: element or -1
  std::string label_;
};

/// x*y = z*w  =>  y*z = w*x (the converse is the same statement renamed).
class AlterabilityRule final : public Rule {
 public:
  [[nodiscard]] const std::string& name() const override { return name_; }
  bool sweep(DeductionContext& ctx) const override;
  bool replay(DeductionContext& ctx, const TraceEntry& e) const override;
  bool apply(DeductionContext& ctx, Element x, Element y, Element z, Element w) const;

 private:
  std::string name_ = "alterability";
};

/// Latin-square singles on a table with injective rows and columns: a cell
/// with one admissible value ("cancellation"), a value with one admissible
/// cell in its row ("right_solvability") or column ("left_solvability"),
/// and the matching empty-domain contradictions.
class LatinRule final : public Rule {
 public:
  [[nodiscard]] const std::string& name() const override { return cell_; }
  [[nodiscard]] bool produces(const std::string& label) const override;
  bool sweep(DeductionContext& ctx) const override;
  bool replay(DeductionContext& ctx, const TraceEntry& e) const override;

  bool apply_cell(DeductionContext& ctx, Cell cell) const;
  bool apply_row_value(DeductionContext& ctx, Element row, Element v) const;
  bool apply_col_value(DeductionContext& ctx, Element col, Element v) const;

 private:
  std::string cell_ = "cancellation";
  std::string row_ = "right_solvability";
  std::string col_ = "left_solvability";
};

/// Applies rules in priority order, returning to the first rule whenever a
/// sweep changed the table, until nothing changes.
class Propagator {
 public:
  Propagator() = default;
  explicit Propagator(std::vector<std::shared_ptr<const Rule>> rules) : rules_(std::move(rules)) {}

  void add(std::shared_ptr<const Rule> rule) { rules_.push_back(std::move(rule)); }
  [[nodiscard]] const std::vector<std::shared_ptr<const Rule>>& rules() const noexcept {
    return rules_;
  }

  /// Returns the contradiction, if any.
  std::optional<Contradiction> run(PartialTable& table, Trace* trace = nullptr) const;

  /// Checks every seed, case and deduction of `trace` in order: each
  /// deduction must follow from its rule instance using only its premise
  /// cells, and each contradiction likewise. Returns a description of the
  /// first step that does not, or nullopt.
  [[nodiscard]] std::optional<std::string> replay(const Trace& trace, std::size_t order,
                                                  bool rows_injective,
                                                  bool cols_injective) const;

 private:
  std::vector<std::shared_ptr<const Rule>> rules_;
};

}  // namespace quadlab
