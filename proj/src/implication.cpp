#include <algorithm>

#include "quadlab/propagation.hpp"
#include "quadlab/properties.hpp"

namespace quadlab {

namespace {

bool has(std::span<const PropertyKind> ps, PropertyKind p) {
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

// Depth-first generator of every table satisfying the identity hypotheses,
// up to the relabelings the least-number heuristic discards.
class ModelSweep {
 public:
  ModelSweep(std::size_t n, std::span<const PropertyKind> hyps, std::span<const PropertyKind> concl,
             ImplicationVerdict& out)
      : n_(n), hyps_(hyps), concl_(concl), out_(out),
        table_(n, has(hyps, PropertyKind::left_cancellative) ||
                      has(hyps, PropertyKind::right_solvable) ||
                      has(hyps, PropertyKind::quasigroup),
               has(hyps, PropertyKind::right_cancellative) ||
                   has(hyps, PropertyKind::left_solvable) ||
                   has(hyps, PropertyKind::quasigroup)) {
    for (PropertyKind p : hyps) {
      for (const auto& id : identities_of(p))
        prop_.add(std::make_shared<IdentityRule>(id));
      if (p == PropertyKind::alterable) prop_.add(std::make_shared<AlterabilityRule>());
    }
    if (table_.rows_injective() && table_.cols_injective()) prop_.add(std::make_shared<LatinRule>());
    // Cells in order of their larger coordinate, so that element indices
    // enter the table one at a time.
    for (Element m = 0; m < n; ++m) {
      for (Element c = 0; c <= m; ++c) order_.push_back({m, c});
      for (Element r = 0; r < m; ++r) order_.push_back({r, m});
    }
  }

  /// Returns true once a counterexample has been recorded.
  bool run() { return dfs(); }

 private:
  bool dfs() {
    const auto mark = table_.mark();
    if (prop_.run(table_)) {
      table_.undo(mark);
      return false;
    }
    const Cell* next = nullptr;
    for (const Cell& c : order_)
      if (!table_.known(c.row, c.col)) {
        next = &c;
        break;
      }
    bool found = false;
    if (!next) {
      found = leaf();
    } else {
      const int limit = std::min<int>(static_cast<int>(n_) - 1, appeared(*next) + 1);
      for (int v = 0; v <= limit && !found; ++v) {
        if (!(table_.domain(next->row, next->col) >> v & 1)) continue;
        const auto inner = table_.mark();
        table_.set(next->row, next->col, static_cast<Element>(v));
        found = dfs();
        table_.undo(inner);
      }
    }
    table_.undo(mark);
    return found;
  }

  // Largest element index mentioned so far, counting the branching cell.
  int appeared(Cell at) const {
    bool id_diagonal = true;
    for (Element x = 0; x < n_; ++x)
      if (table_.get(x, x) != x) id_diagonal = false;
    int m = std::max(at.row, at.col);
    for (Element r = 0; r < n_; ++r)
      for (Element c = 0; c < n_; ++c) {
        if (!table_.known(r, c) || (id_diagonal && r == c)) continue;
        m = std::max({m, static_cast<int>(r), static_cast<int>(c), table_.get(r, c)});
      }
    return m;
  }

  bool leaf() {
    const Groupoid g = table_.to_groupoid();
    for (PropertyKind p : hyps_)
      if (!holds(g, p)) return false;
    ++out_.models_checked;
    std::vector<PropertyKind> violated;
    for (PropertyKind p : concl_)
      if (!holds(g, p)) violated.push_back(p);
    if (violated.empty()) return false;
    out_.counterexample_found = true;
    out_.counterexample = g;
    out_.violated = std::move(violated);
    return true;
  }

  std::size_t n_;
  std::span<const PropertyKind> hyps_, concl_;
  ImplicationVerdict& out_;
  PartialTable table_;
  Propagator prop_;
  std::vector<Cell> order_;
};

}  // namespace

ImplicationVerdict check_implication(std::span<const PropertyKind> hypotheses,
                                     std::span<const PropertyKind> conclusions,
                                     std::size_t max_order) {
  ImplicationVerdict out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    out.max_order = n;
    if (ModelSweep(n, hypotheses, conclusions, out).run()) break;
  }
  return out;
}

}  // namespace quadlab
