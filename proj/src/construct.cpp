#include "quadlab/construct.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "quadlab/properties.hpp"
#include "quadlab/structure.hpp"

namespace quadlab {

// ---------------------------------------------------------------------------
// Completion
// ---------------------------------------------------------------------------

int parse_branch(std::string_view token) {
  if (token.size() == 2 && token[0] == 'n' && token[1] >= '1' && token[1] <= '4')
    return token[1] - '0';
  throw ParseError("branch must be one of n1, n2, n3, n4");
}

Element form_element(std::size_t level, int k) {
  if (level == 1) return static_cast<Element>(k - 1);
  return static_cast<Element>(5 + 4 * (level - 2) + static_cast<std::size_t>(k - 1));
}

std::vector<std::string> form_names(std::size_t n) {
  std::vector<std::string> names = {"a", "ab", "ba", "b", "aba"};
  for (std::size_t level = 2; level <= n; ++level)
    for (int k = 1; k <= 4; ++k) names.push_back(std::to_string(level) + std::to_string(k));
  return names;
}

Propagator completion_propagator(Element aba, bool reverse) {
  auto id = [](std::string name, std::string_view eq) { return Identity::parse(std::move(name), eq); };
  auto rule = [](Identity i, std::string label, std::vector<int> pinned = {}) {
    return std::make_shared<IdentityRule>(std::move(i), std::move(pinned), std::move(label));
  };
  const auto left_dist = id("left_distributive", "x*(y*z) = (x*y)*(x*z)");
  const auto right_dist = id("right_distributive", "(x*y)*z = (x*z)*(y*z)");
  std::vector<std::shared_ptr<const Rule>> rules = {
      rule(id("idempotent", "x*x = x"), "idempotency"),
      std::make_shared<LatinRule>(),
      rule(id("bookend", "(y*x)*(x*y) = x"), "bookend"),
      rule(id("elastic", "x*(y*x) = (x*y)*x"), "elasticity"),
      rule(id("strongly_elastic", "(x*y)*x = (y*x)*y"), "strong_elasticity"),
      rule(left_dist, "left_distributivity"),
      rule(right_dist, "right_distributivity"),
      rule(id("medial", "(x*y)*(z*w) = (x*z)*(y*w)"), "mediality"),
      std::make_shared<AlterabilityRule>(),
      rule(id("identity8", "x*(y*(y*x)) = ((x*y)*x)*y"), "identity8"),
      rule(id("identity9", "((x*y)*y)*x = y*(x*(y*x))"), "identity9"),
      rule(left_dist, "generated_left", {aba, -1, -1}),
      rule(right_dist, "generated_right", {-1, -1, aba}),
  };
  if (reverse) std::reverse(rules.begin(), rules.end());
  return Propagator(std::move(rules));
}

namespace {

struct Seed {
  Cell cell;
  Element value;
  const char* rule;
};

std::vector<Seed> skeleton(const BranchChoice& choice) {
  const std::size_t n = choice.n;
  auto E = [](std::size_t level, int k) { return form_element(level, k); };
  const Element aba = kFormAba;
  std::vector<Seed> s;
  auto add = [&](Element r, Element c, Element v, const char* rule) { s.push_back({{r, c}, v, rule}); };

  add(E(1, 1), E(1, 4), E(1, 2), "definition");
  add(E(1, 4), E(1, 1), E(1, 3), "definition");
  add(E(1, 2), E(1, 1), aba, "definition");
  add(E(1, 1), E(1, 3), aba, "definition");
  for (std::size_t L = 2; L <= n; ++L) {
    add(E(L - 1, 1), E(L - 1, 2), E(L, 1), "definition");
    add(E(L - 1, 2), E(L - 1, 4), E(L, 2), "definition");
    add(E(L - 1, 3), E(L - 1, 1), E(L, 3), "definition");
    add(E(L - 1, 4), E(L - 1, 3), E(L, 4), "definition");
  }
  for (std::size_t L = 1; L <= n; ++L) {
    add(E(L, 1), E(L, 4), E(L, 2), "level_products");
    add(E(L, 2), E(L, 3), E(L, 4), "level_products");
    add(E(L, 3), E(L, 2), E(L, 1), "level_products");
    add(E(L, 4), E(L, 1), E(L, 3), "level_products");
  }
  for (std::size_t L = 2; L <= n; ++L)
    for (int k = 1; k <= 4; ++k) add(aba, E(L, k), E(L - 1, k), "base_left");
  for (std::size_t L = 2; L <= n; ++L) {
    add(E(L, 1), aba, E(L - 1, 2), "base_right");
    add(E(L, 2), aba, E(L - 1, 4), "base_right");
    add(E(L, 3), aba, E(L - 1, 1), "base_right");
    add(E(L, 4), aba, E(L - 1, 3), "base_right");
  }
  for (std::size_t L = 1; L <= n; ++L) {
    add(E(L, 1), E(L, 3), aba, "level_cycle");
    add(E(L, 2), E(L, 1), aba, "level_cycle");
    add(E(L, 3), E(L, 4), aba, "level_cycle");
    add(E(L, 4), E(L, 2), aba, "level_cycle");
  }
  if (n >= 2) {
    const BranchRow& row = branch_row(choice.target);
    const Element a = E(1, 1), ab = E(1, 2), ba = E(1, 3), b = E(1, 4);
    const Cell level_cells[] = {{aba, ab}, {aba, ba}, {aba, b}, {a, aba},
                                {ab, aba}, {ba, aba}, {b, aba}};
    for (int i = 0; i < 7; ++i) add(level_cells[i].row, level_cells[i].col, E(n, row.level[i]), "branch_row");
    const int base_pairs[4][2] = {{1, 2}, {2, 4}, {3, 1}, {4, 3}};
    for (int i = 0; i < 4; ++i)
      add(E(n, base_pairs[i][0]), E(n, base_pairs[i][1]), E(1, row.base[i]), "branch_row");
    if (n >= 3) add(E(1, 1), E(3, 4), E(n, row.deep[0]), "branch_row");
    add(E(2, 3), E(1, 4), E(n, row.deep[1]), "branch_row");
    if (n >= 3) add(E(3, 4), E(1, 4), E(n, row.deep[2]), "branch_row");
    add(E(1, 4), E(2, 1), E(n, row.deep[3]), "branch_row");
    add(E(1, 1), E(n, choice.target), E(n - 1, row.previous), "branch_row");
    add(E(n, row.previous), E(1, 1), E(n - 1, row.previous), "branch_row");
  }
  add(aba, E(1, 1), E(n, choice.target), "branch");
  for (Element x = 0; x < static_cast<Element>(1 + 4 * n); ++x) add(x, x, x, "idempotency");
  return s;
}

TraceEntry case_entry(TraceEntry::Kind kind, Cell cell, Element v, std::string message) {
  TraceEntry e;
  e.kind = kind;
  e.cell = cell;
  e.value = v;
  e.message = std::move(message);
  return e;
}

class Completion {
 public:
  Completion(const BranchChoice& choice, const CompletionOptions& opt, CompletionResult& out)
      : opt_(opt), out_(out), prop_(completion_propagator(kFormAba, opt.reverse_rules)),
        table_(1 + 4 * choice.n, true, true) {}

  void run(const std::vector<Seed>& seeds) {
    Trace* trace = opt_.record_trace ? &out_.trace : nullptr;
    DeductionContext ctx(table_, trace);
    for (const Seed& s : seeds) {
      const std::string rule = s.rule;
      if (!ctx.seed(s.cell, s.value, rule)) return;
    }
    if (prop_.run(table_, trace)) return;
    out_.fixpoint.resize(table_.order() * table_.order());
    for (Element r = 0; r < table_.order(); ++r)
      for (Element c = 0; c < table_.order(); ++c)
        out_.fixpoint[r * table_.order() + c] = table_.get(r, c);
    search(trace, false);
  }

 private:
  // Returns a short outcome for the enclosing case.
  std::string search(Trace* trace, bool propagate) {
    if (propagate && prop_.run(table_, trace)) return "contradiction";
    if (table_.complete()) {
      Groupoid g = table_.to_groupoid(out_.names);
      if (!is_quadratical(g, QuadraticalMethod::all)) return "completed table is not quadratical";
      if (++out_.solutions == 1) out_.table = std::move(g);
      return "completed";
    }
    const auto n = static_cast<Element>(table_.order());
    Cell best{};
    int best_size = 1 << 30;
    for (Element r = 0; r < n; ++r)
      for (Element c = 0; c < n; ++c) {
        if (table_.known(r, c)) continue;
        const int size = std::popcount(table_.domain(r, c));
        if (size < best_size) best = {r, c}, best_size = size;
      }
    const std::uint64_t dom = table_.domain(best.row, best.col);
    for (Element v = 0; v < n; ++v) {
      if (!(dom >> v & 1)) continue;
      if (out_.solutions >= opt_.max_solutions) {
        out_.exhausted = false;
        break;
      }
      ++out_.cases;
      if (trace) trace->push(case_entry(TraceEntry::Kind::case_open, best, v, ""));
      const auto mark = table_.mark();
      table_.set(best.row, best.col, v);
      std::string outcome = search(trace, true);
      table_.undo(mark);
      if (trace) trace->push(case_entry(TraceEntry::Kind::case_close, best, v, std::move(outcome)));
    }
    return "";
  }

  const CompletionOptions& opt_;
  CompletionResult& out_;
  Propagator prop_;
  PartialTable table_;
};

}  // namespace

CompletionResult complete_form_Qn(const BranchChoice& choice, const CompletionOptions& options) {
  if (choice.n < 1) throw PreconditionError("form depth must be >= 1");
  if (choice.target < 1 || choice.target > 4) throw PreconditionError("branch must be 1..4");
  if (1 + 4 * choice.n > PartialTable::kMaxOrder) throw PreconditionError("form depth too large");
  CompletionResult out;
  out.choice = choice;
  out.names = form_names(choice.n);
  out.trace = Trace(out.names);
  Completion(choice, options, out).run(skeleton(choice));
  return out;
}

std::optional<std::string> replay_completion(const CompletionResult& result) {
  const std::size_t order = 1 + 4 * result.choice.n;
  return completion_propagator(kFormAba).replay(result.trace, order, true, true);
}

// ---------------------------------------------------------------------------
// Translatable tables
// ---------------------------------------------------------------------------

Groupoid from_translatable(const TranslatableSeed& seed) {
  const std::size_t n = seed.order;
  if (n == 0 || seed.k < 1 || seed.k > n) throw PreconditionError("translatable seed: k must be in 1..n");
  if (seed.first_row.size() != n) throw PreconditionError("translatable seed: first row has wrong length");
  std::vector<Element> table(n * n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t j = 0; j < n; ++j)
      table[q * n + j] = seed.first_row[(j + n * n - (q * seed.k) % n) % n];
  return Groupoid(n, std::move(table));
}

bool is_k_translatable(const Groupoid& g, std::size_t k) {
  const std::size_t n = g.order();
  for (std::size_t q = 1; q < n; ++q)
    for (std::size_t j = 0; j < n; ++j)
      if (g(static_cast<Element>(q), static_cast<Element>(j)) !=
          g(static_cast<Element>(q - 1), static_cast<Element>((j + n - k % n) % n)))
        return false;
  return true;
}

std::optional<Groupoid> forced_idempotent_translatable(std::size_t n, std::size_t k) {
  if (n == 0 || k < 1 || k > n) throw PreconditionError("need 1 <= k <= n");
  if (std::gcd(k - 1, n) != 1) return std::nullopt;
  std::vector<Element> row(n);
  const std::size_t step = (n + 1 - k % n) % n;  // 1 - k mod n
  for (std::size_t q = 0; q < n; ++q) row[(q * step) % n] = static_cast<Element>(q);
  return from_translatable({n, k, std::move(row)});
}

// ---------------------------------------------------------------------------
// Affine construction
// ---------------------------------------------------------------------------

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

std::vector<long> decode(const std::vector<std::size_t>& factors, std::size_t index) {
  std::vector<long> t(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    t[i] = static_cast<long>(index % factors[i]);
    index /= factors[i];
  }
  return t;
}

std::vector<long> apply_phi(const AffineSpec& s, const std::vector<long>& x) {
  std::vector<long> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += s.phi[i][j] * x[j];
    y[i] = mod(acc, static_cast<long>(s.factors[i]));
  }
  return y;
}

}  // namespace

std::size_t affine_index(const std::vector<std::size_t>& factors, const std::vector<long>& tuple) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    index = index * factors[i] + static_cast<std::size_t>(mod(tuple[i], static_cast<long>(factors[i])));
  return index;
}

bool affine_spec_valid(const AffineSpec& s, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  const std::size_t m = s.factors.size();
  if (s.phi.size() != m) return fail("phi has the wrong number of rows");
  for (const auto& row : s.phi)
    if (row.size() != m) return fail("phi has the wrong number of columns");
  for (std::size_t d : s.factors)
    if (d == 0) return fail("zero factor");
  // x_j is only defined mod d_j, so phi_ij * d_j must vanish mod d_i.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (mod(s.phi[i][j] * static_cast<long>(s.factors[j]), static_cast<long>(s.factors[i])) != 0)
        return fail("phi is not well defined on the group");
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<long> e(m, 0);
    e[j] = 1;
    const auto p1 = apply_phi(s, e);
    const auto p2 = apply_phi(s, p1);
    for (std::size_t i = 0; i < m; ++i)
      if (mod(2 * p2[i] - 2 * p1[i] + e[i], static_cast<long>(s.factors[i])) != 0)
        return fail("2*phi^2 - 2*phi + 1 is not zero");
  }
  std::size_t n = 1;
  for (std::size_t d : s.factors) n *= d;
  std::vector<char> hit(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t y = affine_index(s.factors, apply_phi(s, decode(s.factors, x)));
    if (hit[y]) return fail("phi is not invertible");
    hit[y] = 1;
  }
  return true;
}

Groupoid build_affine(const AffineSpec& spec) {
  std::string why;
  if (!affine_spec_valid(spec, &why)) throw Error("affine spec: " + why);
  std::size_t n = 1;
  for (std::size_t d : spec.factors) n *= d;
  std::vector<std::vector<long>> elems(n), images(n);
  for (std::size_t x = 0; x < n; ++x) {
    elems[x] = decode(spec.factors, x);
    images[x] = apply_phi(spec, elems[x]);
  }
  const std::size_t m = spec.factors.size();
  std::vector<Element> table(n * n);
  std::vector<long> t(m);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < m; ++i) t[i] = images[x][i] + elems[y][i] - images[y][i];
      table[x * n + y] = static_cast<Element>(affine_index(spec.factors, t));
    }
  Groupoid g(n, std::move(table));
  if (!is_quadratical(g, QuadraticalMethod::thm2_11))
    throw Error("affine construction produced a non-quadratical table");
  return g;
}

}  // namespace quadlab
