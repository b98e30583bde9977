#include "quadlab/propagation.hpp"

#include <algorithm>
#include <bit>

namespace quadlab {

// ---------------------------------------------------------------------------
// PartialTable
// ---------------------------------------------------------------------------

PartialTable::PartialTable(std::size_t order, bool rows_injective, bool cols_injective)
    : n_(order), rows_inj_(rows_injective), cols_inj_(cols_injective),
      cells_(order * order, kUnknown), row_vals_(order, 0), col_vals_(order, 0) {
  if (order == 0 || order > kMaxOrder) throw Error("partial table order out of range");
  trail_.reserve(order * order);
}

int PartialTable::find_in_row(Element r, Element v) const noexcept {
  if (rows_inj_ && !(row_vals_[r] >> v & 1)) return -1;
  for (std::size_t c = 0; c < n_; ++c)
    if (cells_[r * n_ + c] == v) return static_cast<int>(c);
  return -1;
}

int PartialTable::find_in_col(Element c, Element v) const noexcept {
  if (cols_inj_ && !(col_vals_[c] >> v & 1)) return -1;
  for (std::size_t r = 0; r < n_; ++r)
    if (cells_[r * n_ + c] == v) return static_cast<int>(r);
  return -1;
}

std::uint64_t PartialTable::domain(Element r, Element c) const noexcept {
  if (known(r, c)) return std::uint64_t{1} << get(r, c);
  std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  if (rows_inj_) all &= ~row_vals_[r];
  if (cols_inj_) all &= ~col_vals_[c];
  return all;
}

std::optional<Cell> PartialTable::clash(Element r, Element c, Element v) const noexcept {
  if (rows_inj_) {
    const int at = find_in_row(r, v);
    if (at >= 0 && at != c) return Cell{r, static_cast<Element>(at)};
  }
  if (cols_inj_) {
    const int at = find_in_col(c, v);
    if (at >= 0 && at != r) return Cell{static_cast<Element>(at), c};
  }
  return std::nullopt;
}

void PartialTable::set(Element r, Element c, Element v) {
  const std::size_t idx = r * n_ + c;
  cells_[idx] = v;
  row_vals_[r] |= std::uint64_t{1} << v;
  col_vals_[c] |= std::uint64_t{1} << v;
  trail_.push_back(static_cast<std::uint32_t>(idx));
}

void PartialTable::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    const std::size_t idx = trail_.back();
    trail_.pop_back();
    const std::size_t r = idx / n_, c = idx % n_;
    const auto bit = std::uint64_t{1} << cells_[idx];
    cells_[idx] = kUnknown;
    // Masks are exact only on injective lines; elsewhere they are unused.
    row_vals_[r] &= ~bit;
    col_vals_[c] &= ~bit;
  }
}

Groupoid PartialTable::to_groupoid(std::vector<std::string> names) const {
  if (!complete()) throw PreconditionError("partial table is incomplete");
  std::vector<Element> table(cells_.begin(), cells_.end());
  return Groupoid(n_, std::move(table), std::move(names));
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

std::string Trace::name(Element e) const {
  if (e < names_.size()) return names_[e];
  return std::to_string(e + 1);
}

std::string Trace::cell(Cell c) const { return "(" + name(c.row) + "," + name(c.col) + ")"; }

std::string Trace::rule(const TraceEntry& e) const {
  std::string out = e.rule;
  if (!e.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i) out += ',';
      out += name(e.args[i]);
    }
    out += ')';
  }
  return out + e.suffix;
}

std::string Trace::render_line(const TraceEntry& e) const {
  auto from = [&] {
    if (e.premises.empty()) return std::string(" FROM -");
    std::string out = " FROM";
    for (Cell p : e.premises) out += " " + cell(p);
    return out;
  };
  using K = TraceEntry::Kind;
  switch (e.kind) {
    case K::seed:
      return "cell " + cell(e.cell) + " := " + name(e.value) + " BY " + rule(e) + " FROM -";
    case K::deduction:
      return "cell " + cell(e.cell) + " := " + name(e.value) + " BY " + rule(e) + from();
    case K::contradiction: {
      std::string where = e.whole_row   ? "(" + name(e.cell.row) + ",*)"
                          : e.whole_col ? "(*," + name(e.cell.col) + ")"
                                        : cell(e.cell);
      return "CONTRADICTION at " + where + ": " + e.message + " BY " + rule(e) + from();
    }
    case K::case_open:
      return "CASE " + cell(e.cell) + " = " + name(e.value);
    case K::case_close:
      return "END CASE " + cell(e.cell) + " = " + name(e.value) +
             (e.message.empty() ? "" : ": " + e.message);
  }
  return {};
}

std::string Trace::render() const {
  std::string out;
  for (const auto& e : entries_) out += render_line(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// DeductionContext
// ---------------------------------------------------------------------------

void DeductionContext::begin(const std::string& rule, std::span<const Element> args) noexcept {
  rule_ = &rule;
  arg_count_ = std::min(args.size(), args_.size());
  std::copy_n(args.begin(), arg_count_, args_.begin());
}

TraceEntry DeductionContext::entry(TraceEntry::Kind kind, Cell cell) const {
  TraceEntry e;
  e.kind = kind;
  e.cell = cell;
  if (rule_) e.rule = *rule_;
  e.args.assign(args_.begin(), args_.begin() + static_cast<std::ptrdiff_t>(arg_count_));
  return e;
}

bool DeductionContext::fail(TraceEntry e) {
  if (trace_) trace_->push(e);
  contradiction_ = Contradiction{std::move(e)};
  return false;
}

bool DeductionContext::derive(Cell cell, Element v, std::span<const Cell> premises) {
  return record(cell, v, premises, TraceEntry::Kind::deduction);
}

bool DeductionContext::record(Cell cell, Element v, std::span<const Cell> premises,
                              TraceEntry::Kind kind) {
  const int cur = table_.get(cell.row, cell.col);
  if (cur == v) return true;
  auto name = [&](Element x) { return trace_ ? trace_->name(x) : std::to_string(x + 1); };
  TraceEntry e = entry(TraceEntry::Kind::contradiction, cell);
  e.value = v;
  e.seeded = kind == TraceEntry::Kind::seed;
  e.premises.assign(premises.begin(), premises.end());
  if (cur >= 0) {
    e.premises.push_back(cell);
    e.message = name(static_cast<Element>(cur)) + " ≠ " + name(v);
    return fail(std::move(e));
  }
  if (auto other = table_.clash(cell.row, cell.col, v)) {
    e.premises.push_back(*other);
    if (other->row == cell.row) {
      e.message = name(cell.col) + " ≠ " + name(other->col);
      e.suffix = "+left_cancellation";
    } else {
      e.message = name(cell.row) + " ≠ " + name(other->row);
      e.suffix = "+right_cancellation";
    }
    return fail(std::move(e));
  }
  table_.set(cell.row, cell.col, v);
  changed_ = true;
  last_ = std::pair{cell, v};
  if (trace_) {
    e.kind = kind;
    trace_->push(std::move(e));
  }
  return true;
}

bool DeductionContext::seed(Cell cell, Element v, const std::string& rule) {
  begin(rule);
  return record(cell, v, {}, TraceEntry::Kind::seed);
}

bool DeductionContext::contradict(Cell cell, std::string message, std::vector<Cell> premises,
                                  bool whole_row, bool whole_col) {
  TraceEntry e = entry(TraceEntry::Kind::contradiction, cell);
  e.message = std::move(message);
  e.premises = std::move(premises);
  e.whole_row = whole_row;
  e.whole_col = whole_col;
  return fail(std::move(e));
}

// ---------------------------------------------------------------------------
// IdentityRule
// ---------------------------------------------------------------------------

namespace {

// Fixed-capacity premise list; identities here read at most a dozen cells.
class CellList {
 public:
  void push(Cell c) {
    if (size_ < cells_.size()) cells_[size_++] = c;
  }
  [[nodiscard]] std::span<const Cell> span() const { return {cells_.data(), size_}; }

 private:
  std::array<Cell, 32> cells_{};
  std::size_t size_ = 0;
};

bool is_product(const Term& t) { return t.nodes()[t.root()].var < 0; }

// Forces the subterm at `at` (a product) to take value `target`.
bool solve(DeductionContext& ctx, const Term& term, int at, Element target, const Element* vars,
           CellList premises) {
  const PartialTable& t = ctx.table();
  const auto& nd = term.nodes()[at];
  auto get = [&](int a, int b) { return t.get(static_cast<Element>(a), static_cast<Element>(b)); };
  auto read = [&](int a, int b) { premises.push({static_cast<Element>(a), static_cast<Element>(b)}); };
  const int a = term.eval_partial_at(vars, get, read, nd.left);
  const int b = term.eval_partial_at(vars, get, read, nd.right);
  if (a >= 0 && b >= 0)
    return ctx.derive({static_cast<Element>(a), static_cast<Element>(b)}, target, premises.span());
  if (a >= 0 && t.rows_injective()) {
    const int c = t.find_in_row(static_cast<Element>(a), target);
    if (c < 0) return true;
    premises.push({static_cast<Element>(a), static_cast<Element>(c)});
    return solve(ctx, term, nd.right, static_cast<Element>(c), vars, premises);
  }
  if (b >= 0 && t.cols_injective()) {
    const int r = t.find_in_col(static_cast<Element>(b), target);
    if (r < 0) return true;
    premises.push({static_cast<Element>(r), static_cast<Element>(b)});
    return solve(ctx, term, nd.left, static_cast<Element>(r), vars, premises);
  }
  return true;
}

}  // namespace

IdentityRule::IdentityRule(Identity id, std::vector<int> pinned, std::string label)
    : id_(std::move(id)), pinned_(std::move(pinned)), label_(std::move(label)) {
  pinned_.resize(static_cast<std::size_t>(id_.arity), -1);
  if (label_.empty()) label_ = id_.name;
}

bool IdentityRule::apply(DeductionContext& ctx, const Element* vars) const {
  const PartialTable& t = ctx.table();
  auto get = [&](int a, int b) { return t.get(static_cast<Element>(a), static_cast<Element>(b)); };
  CellList lp, rp;
  const int lv = id_.lhs.eval_partial(vars, get, [&](int a, int b) {
    lp.push({static_cast<Element>(a), static_cast<Element>(b)});
  });
  const int rv = id_.rhs.eval_partial(vars, get, [&](int a, int b) {
    rp.push({static_cast<Element>(a), static_cast<Element>(b)});
  });
  if (lv >= 0 && lv == rv) return true;
  if (lv >= 0 && is_product(id_.rhs))
    return solve(ctx, id_.rhs, id_.rhs.root(), static_cast<Element>(lv), vars, lp);
  if (rv >= 0 && is_product(id_.lhs))
    return solve(ctx, id_.lhs, id_.lhs.root(), static_cast<Element>(rv), vars, rp);
  return true;
}

bool IdentityRule::sweep(DeductionContext& ctx) const {
  const auto n = ctx.table().order();
  const auto arity = static_cast<std::size_t>(id_.arity);
  std::array<Element, 4> vars{};
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < arity; ++i) {
    if (pinned_[i] >= 0) vars[i] = static_cast<Element>(pinned_[i]);
    else free.push_back(i);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < free.size(); ++i) total *= n;
  const std::span<const Element> args(vars.data(), arity);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t i = free.size(); i-- > 0;) {
      vars[free[i]] = static_cast<Element>(rest % n);
      rest /= n;
    }
    ctx.begin(label_, args);
    if (!apply(ctx, vars.data())) return false;
  }
  return true;
}

bool IdentityRule::replay(DeductionContext& ctx, const TraceEntry& e) const {
  if (e.args.size() != static_cast<std::size_t>(id_.arity)) return true;
  ctx.begin(label_, e.args);
  return apply(ctx, e.args.data());
}

// ---------------------------------------------------------------------------
// AlterabilityRule
// ---------------------------------------------------------------------------

bool AlterabilityRule::apply(DeductionContext& ctx, Element x, Element y, Element z,
                             Element w) const {
  const PartialTable& t = ctx.table();
  const int v = t.get(x, y);
  if (v < 0 || t.get(z, w) != v) return true;
  const int p = t.get(y, z), q = t.get(w, x);
  if (p >= 0 && p == q) return true;
  if (p >= 0) {
    const Cell prem[] = {{x, y}, {z, w}, {y, z}};
    return ctx.derive({w, x}, static_cast<Element>(p), prem);
  }
  if (q >= 0) {
    const Cell prem[] = {{x, y}, {z, w}, {w, x}};
    return ctx.derive({y, z}, static_cast<Element>(q), prem);
  }
  return true;
}

bool AlterabilityRule::sweep(DeductionContext& ctx) const {
  const PartialTable& t = ctx.table();
  const auto n = static_cast<Element>(t.order());
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const int v = t.get(x, y);
      if (v < 0) continue;
      for (Element z = 0; z < n; ++z) {
        auto one = [&](Element w) {
          const Element args[] = {x, y, z, w};
          ctx.begin(name_, args);
          return apply(ctx, x, y, z, w);
        };
        if (t.rows_injective()) {
          const int w = t.find_in_row(z, static_cast<Element>(v));
          if (w >= 0 && !one(static_cast<Element>(w))) return false;
        } else {
          for (Element w = 0; w < n; ++w)
            if (t.get(z, w) == v && !one(w)) return false;
        }
      }
    }
  return true;
}

bool AlterabilityRule::replay(DeductionContext& ctx, const TraceEntry& e) const {
  if (e.args.size() != 4) return true;
  ctx.begin(name_, e.args);
  return apply(ctx, e.args[0], e.args[1], e.args[2], e.args[3]);
}

// ---------------------------------------------------------------------------
// LatinRule
// ---------------------------------------------------------------------------

namespace {

// A known cell in row r or column c holding u.
Cell witness(const PartialTable& t, Element r, Element c, Element u) {
  if (const int at = t.find_in_row(r, u); at >= 0) return {r, static_cast<Element>(at)};
  return {static_cast<Element>(t.find_in_col(c, u)), c};
}

}  // namespace

bool LatinRule::produces(const std::string& label) const {
  return label == cell_ || label == row_ || label == col_;
}

bool LatinRule::apply_cell(DeductionContext& ctx, Cell cell) const {
  const PartialTable& t = ctx.table();
  if (t.known(cell.row, cell.col)) return true;
  const std::uint64_t dom = t.domain(cell.row, cell.col);
  if (std::popcount(dom) > 1) return true;
  ctx.begin(cell_);
  std::vector<Cell> prem;
  const auto n = static_cast<Element>(t.order());
  for (Element u = 0; u < n; ++u)
    if (!(dom >> u & 1)) prem.push_back(witness(t, cell.row, cell.col, u));
  if (dom == 0) return ctx.contradict(cell, "no admissible value", std::move(prem));
  return ctx.derive(cell, static_cast<Element>(std::countr_zero(dom)), prem);
}

bool LatinRule::apply_row_value(DeductionContext& ctx, Element row, Element v) const {
  const PartialTable& t = ctx.table();
  if (t.find_in_row(row, v) >= 0) return true;
  const auto n = static_cast<Element>(t.order());
  int spot = -1, count = 0;
  for (Element c = 0; c < n && count < 2; ++c)
    if (!t.known(row, c) && t.find_in_col(c, v) < 0) spot = c, ++count;
  if (count > 1) return true;
  const Element args[] = {row, v};
  ctx.begin(row_, args);
  std::vector<Cell> prem;
  for (Element c = 0; c < n; ++c) {
    if (c == spot) continue;
    if (t.known(row, c)) prem.push_back({row, c});
    else prem.push_back({static_cast<Element>(t.find_in_col(c, v)), c});
  }
  if (count == 0) return ctx.contradict({row, 0}, "no place for this value", std::move(prem), true);
  return ctx.derive({row, static_cast<Element>(spot)}, v, prem);
}

bool LatinRule::apply_col_value(DeductionContext& ctx, Element col, Element v) const {
  const PartialTable& t = ctx.table();
  if (t.find_in_col(col, v) >= 0) return true;
  const auto n = static_cast<Element>(t.order());
  int spot = -1, count = 0;
  for (Element r = 0; r < n && count < 2; ++r)
    if (!t.known(r, col) && t.find_in_row(r, v) < 0) spot = r, ++count;
  if (count > 1) return true;
  const Element args[] = {col, v};
  ctx.begin(col_, args);
  std::vector<Cell> prem;
  for (Element r = 0; r < n; ++r) {
    if (r == spot) continue;
    if (t.known(r, col)) prem.push_back({r, col});
    else prem.push_back({r, static_cast<Element>(t.find_in_row(r, v))});
  }
  if (count == 0)
    return ctx.contradict({0, col}, "no place for this value", std::move(prem), false, true);
  return ctx.derive({static_cast<Element>(spot), col}, v, prem);
}

bool LatinRule::sweep(DeductionContext& ctx) const {
  const PartialTable& t = ctx.table();
  if (!t.rows_injective() || !t.cols_injective()) return true;
  const auto n = static_cast<Element>(t.order());
  for (Element r = 0; r < n; ++r)
    for (Element c = 0; c < n; ++c)
      if (!apply_cell(ctx, {r, c})) return false;
  for (Element r = 0; r < n; ++r)
    for (Element v = 0; v < n; ++v)
      if (!apply_row_value(ctx, r, v)) return false;
  for (Element c = 0; c < n; ++c)
    for (Element v = 0; v < n; ++v)
      if (!apply_col_value(ctx, c, v)) return false;
  return true;
}

bool LatinRule::replay(DeductionContext& ctx, const TraceEntry& e) const {
  if (e.rule == cell_) return apply_cell(ctx, e.cell);
  if (e.args.size() != 2) return true;
  if (e.rule == row_) return apply_row_value(ctx, e.args[0], e.args[1]);
  return apply_col_value(ctx, e.args[0], e.args[1]);
}

// ---------------------------------------------------------------------------
// Propagator
// ---------------------------------------------------------------------------

std::optional<Contradiction> Propagator::run(PartialTable& table, Trace* trace) const {
  DeductionContext ctx(table, trace);
  for (std::size_t i = 0; i < rules_.size();) {
    ctx.reset_changed();
    if (!rules_[i]->sweep(ctx)) return ctx.contradiction();
    i = ctx.changed() ? 0 : i + 1;
  }
  return std::nullopt;
}

std::optional<std::string> Propagator::replay(const Trace& trace, std::size_t order,
                                              bool rows_injective, bool cols_injective) const {
  using K = TraceEntry::Kind;
  std::vector<int> val(order * order, -1);
  std::vector<std::size_t> assigned, marks;
  auto assign = [&](Cell c, Element v) {
    val[c.row * order + c.col] = v;
    assigned.push_back(c.row * order + c.col);
  };
  const auto& entries = trace.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string step = "step " + std::to_string(i + 1) + " (" + trace.render_line(e) + ")";
    switch (e.kind) {
      case K::seed:
        assign(e.cell, e.value);
        continue;
      case K::case_open:
        marks.push_back(assigned.size());
        assign(e.cell, e.value);
        continue;
      case K::case_close:
        if (marks.empty()) return step + ": unmatched case end";
        while (assigned.size() > marks.back()) {
          val[assigned.back()] = -1;
          assigned.pop_back();
        }
        marks.pop_back();
        continue;
      case K::deduction:
      case K::contradiction:
        break;
    }
    PartialTable pt(order, rows_injective, cols_injective);
    for (Cell p : e.premises) {
      const int v = val[p.row * order + p.col];
      if (v < 0) return step + ": premise " + trace.cell(p) + " is not established";
      if (pt.known(p.row, p.col)) continue;
      if (pt.clash(p.row, p.col, static_cast<Element>(v)))
        return step + ": premises violate cancellation";
      pt.set(p.row, p.col, static_cast<Element>(v));
    }
    const Rule* rule = nullptr;
    for (const auto& r : rules_)
      if (!e.seeded && r->produces(e.rule)) rule = r.get();
    DeductionContext ctx(pt, nullptr);
    // Without a rule the entry is a clash between starting facts.
    const bool ok = rule ? rule->replay(ctx, e) : ctx.seed(e.cell, e.value, e.rule);
    if (!rule && e.kind == K::deduction) return step + ": unknown rule";
    if (e.kind == K::deduction) {
      const auto& got = ctx.last_derived();
      if (!ok || !got || !(got->first == e.cell) || got->second != e.value)
        return step + ": does not follow from its premises";
      assign(e.cell, e.value);
    } else if (ok || !(ctx.contradiction()->entry.cell == e.cell)) {
      return step + ": contradiction does not follow from its premises";
    }
  }
  return std::nullopt;
}

}  // namespace quadlab
