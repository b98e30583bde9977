#include "quadlab/structure.hpp"

#include <algorithm>

#include "quadlab/properties.hpp"

namespace quadlab {

namespace {

void require_quadratical(const Groupoid& g, const char* op) {
  if (!is_quadratical(g)) throw PreconditionError(std::string(op) + " requires a quadratical quasigroup");
}

void require_element(const Groupoid& g, Element x) {
  if (x >= g.order()) throw PreconditionError("element out of range");
}

// The x with a·x = b.
Element solve_right(const Groupoid& g, Element a, Element b) {
  const auto row = g.row(a);
  const auto it = std::find(row.begin(), row.end(), b);
  if (it == row.end()) throw StructureError("no solution of " + g.name(a) + "*x = " + g.name(b));
  return static_cast<Element>(it - row.begin());
}

FourCycle cycle_from(const Groupoid& g, Element base, Element x1) {
  FourCycle c{{x1, 0, 0, 0}, base};
  for (int i = 1; i < 4; ++i) c.members[i] = solve_right(g, c.members[i - 1], base);
  if (g(c.members[3], x1) != base) throw StructureError("cycle through " + g.name(x1) + " does not close");
  for (int i = 0; i < 4; ++i) {
    if (c.members[i] == base) throw StructureError("cycle contains its base");
    for (int j = 0; j < i; ++j)
      if (c.members[i] == c.members[j]) throw StructureError("cycle members repeat");
  }
  return c;
}

std::vector<Level> levels_of(const Groupoid& g, Element a, Element b, std::size_t depth) {
  std::vector<Level> levels;
  levels.push_back({a, g(a, b), g(b, a), b});
  while (levels.size() < depth) {
    const Level& p = levels.back();
    levels.push_back({g(p[0], p[1]), g(p[1], p[3]), g(p[2], p[0]), g(p[3], p[2])});
  }
  return levels;
}

std::string level_name(std::size_t level, int k) { return std::to_string(level) + std::to_string(k); }

void check_levels(const Groupoid& g, Element aba, const std::vector<Level>& levels) {
  auto fail = [](std::size_t n, const std::string& what) {
    throw StructureError("level " + std::to_string(n) + ": " + what);
  };
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::size_t n = i + 1;
    const Level& h = levels[i];
    if (g(h[0], h[3]) != h[1] || g(h[1], h[2]) != h[3] || g(h[2], h[1]) != h[0] ||
        g(h[3], h[0]) != h[2])
      fail(n, "products within the level");
    for (int k = 0; k < 4; ++k) {
      if (h[k] == aba) fail(n, "contains aba");
      for (int j = 0; j < k; ++j)
        if (h[k] == h[j]) fail(n, "members not distinct");
    }
    if (g(h[0], h[2]) != aba || g(h[1], h[0]) != aba || g(h[2], h[3]) != aba ||
        g(h[3], h[1]) != aba)
      fail(n, "(n1, n3, n4, n2) is not a 4-cycle on aba");
    if (n == 1) continue;
    const Level& p = levels[i - 1];
    for (int k = 0; k < 4; ++k)
      if (g(aba, h[k]) != p[k]) fail(n, "aba*" + level_name(n, k + 1));
    if (g(h[0], aba) != p[1] || g(h[1], aba) != p[3] || g(h[2], aba) != p[0] ||
        g(h[3], aba) != p[2])
      fail(n, "right action of aba");
  }
}

}  // namespace

BasePoint base_point(const Groupoid& g, Element a, Element b) {
  require_element(g, a);
  require_element(g, b);
  if (a == b) throw PreconditionError("base_point requires a != b");
  require_quadratical(g, "base_point");
  const Element aba = g(g(a, b), a);
  if (aba != g(a, g(b, a))) throw StructureError("(ab)a differs from a(ba)");
  return {a, b, aba};
}

FourCycle four_cycle_through(const Groupoid& g, Element base, Element x1) {
  require_element(g, base);
  require_element(g, x1);
  if (x1 == base) throw PreconditionError("a cycle member cannot be its base");
  require_quadratical(g, "four_cycle_through");
  return cycle_from(g, base, x1);
}

CycleDecomposition cycle_decomposition(const Groupoid& g, Element base) {
  require_element(g, base);
  if (g.order() < 2) throw PreconditionError("cycle_decomposition requires order > 1");
  require_quadratical(g, "cycle_decomposition");
  CycleDecomposition out{base, {}};
  std::vector<char> seen(g.order(), 0);
  seen[base] = 1;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    FourCycle c = cycle_from(g, base, x);
    for (Element m : c.members) {
      if (seen[m]) throw StructureError("cycles on " + g.name(base) + " overlap");
      seen[m] = 1;
    }
    out.cycles.push_back(c);
  }
  return out;
}

HFamily h_family(const Groupoid& g, Element a, Element b, std::size_t depth) {
  if (depth < 1) throw PreconditionError("h_family requires depth >= 1");
  const BasePoint bp = base_point(g, a, b);
  HFamily out{bp, levels_of(g, a, b, depth)};
  check_levels(g, bp.aba, out.levels);
  return out;
}

std::optional<FormQn> detect_form_Qn(const Groupoid& g) {
  require_quadratical(g, "detect_form_Qn");
  const auto order = g.order();
  if (order < 5 || order % 4 != 1) return std::nullopt;
  const std::size_t n = (order - 1) / 4;
  std::vector<char> seen(order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b) {
      if (a == b) continue;
      std::fill(seen.begin(), seen.end(), 0);
      seen[g(g(a, b), a)] = 1;
      bool ok = true;
      for (const Level& h : levels_of(g, a, b, n)) {
        for (Element x : h) {
          if (seen[x]) ok = false;
          seen[x] = 1;
        }
        if (!ok) break;
      }
      if (ok) return FormQn{a, b, n};
    }
  return std::nullopt;
}

int star_position(std::size_t level, int k) noexcept {
  static constexpr int table[4][4] = {
      {2, 1, 4, 3},  // level = 0 mod 4
      {1, 3, 2, 4},  // 1 mod 4
      {3, 4, 1, 2},  // 2 mod 4
      {4, 2, 3, 1},  // 3 mod 4
  };
  return table[level % 4][k - 1];
}

std::vector<Level> star_elements(const Groupoid& g, Element a, Element b, std::size_t depth) {
  const HFamily plain = h_family(g, a, b, depth);
  const Groupoid d = dual(g);
  std::vector<Level> star = levels_of(d, a, b, depth);
  for (std::size_t i = 0; i < depth; ++i)
    for (int k = 1; k <= 4; ++k)
      if (star[i][k - 1] != plain.levels[i][star_position(i + 1, k) - 1])
        throw StructureError("starred " + level_name(i + 1, k) + " is not " +
                             level_name(i + 1, star_position(i + 1, k)));
  return star;
}

const BranchRow& branch_row(int branch) {
  static const BranchRow rows[4] = {
      {{2, 3, 4, 2, 4, 1, 3}, {1, 2, 3, 4}, {3, 2, 1, 1}, 2},
      {{4, 1, 3, 4, 3, 2, 1}, {3, 1, 4, 2}, {1, 4, 2, 2}, 4},
      {{1, 4, 2, 1, 2, 3, 4}, {2, 4, 1, 3}, {4, 1, 3, 3}, 1},
      {{3, 2, 1, 3, 1, 4, 2}, {4, 3, 2, 1}, {2, 3, 4, 4}, 3},
  };
  if (branch < 1 || branch > 4) throw PreconditionError("branch must be 1..4");
  return rows[branch - 1];
}

BranchProfile branch_profile(const Groupoid& g, Element a, Element b) {
  const BasePoint bp = base_point(g, a, b);
  const auto order = g.order();
  if (order < 9 || order % 4 != 1) throw PreconditionError("branch_profile requires form Qn, n >= 2");
  const std::size_t n = (order - 1) / 4;
  const auto levels = levels_of(g, a, b, std::max<std::size_t>(n, 3));
  {
    std::vector<char> seen(order, 0);
    seen[bp.aba] = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (Element x : levels[i]) {
        if (seen[x]) throw PreconditionError("not of form Qn for this pair");
        seen[x] = 1;
      }
  }
  const Level& h1 = levels[0];
  const Level& hn = levels[n - 1];
  const Level& hp = levels[n - 2];
  const Element aba = bp.aba;
  const auto it = std::find(hn.begin(), hn.end(), g(aba, a));
  if (it == hn.end()) throw StructureError("aba*a is not in Hn");
  BranchProfile out;
  out.branch = static_cast<int>(it - hn.begin()) + 1;
  const BranchRow& row = branch_row(out.branch);

  auto check = [&](std::string label, Element got, Element want, const std::string& want_name) {
    out.derived.emplace_back(label, got);
    if (got != want)
      throw StructureError("branch n" + std::to_string(out.branch) + ": " + label + " = " +
                           g.name(got) + ", expected " + want_name);
  };
  const std::string nn = std::to_string(n), np = std::to_string(n - 1);
  const Element ab = h1[1], ba = h1[2];
  const std::pair<Element, Element> level_products[] = {
      {aba, ab}, {aba, ba}, {aba, b}, {a, aba}, {ab, aba}, {ba, aba}, {b, aba}};
  const char* level_labels[] = {"aba*ab", "aba*ba", "aba*b", "a*aba", "ab*aba", "ba*aba", "b*aba"};
  for (int i = 0; i < 7; ++i) {
    const auto [x, y] = level_products[i];
    check(level_labels[i], g(x, y), hn[row.level[i] - 1], nn + std::to_string(row.level[i]));
  }
  const int base_pairs[4][2] = {{1, 2}, {2, 4}, {3, 1}, {4, 3}};
  for (int i = 0; i < 4; ++i) {
    const auto [p, q] = base_pairs[i];
    check(nn + std::to_string(p) + "*" + nn + std::to_string(q), g(hn[p - 1], hn[q - 1]),
          h1[row.base[i] - 1], "1" + std::to_string(row.base[i]));
  }
  const Level& h2 = levels[1];
  const Level& h3 = levels[2];
  const std::pair<Element, Element> deep_products[] = {
      {h1[0], h3[3]}, {h2[2], h1[3]}, {h3[3], h1[3]}, {h1[3], h2[0]}};
  const char* deep_labels[] = {"11*34", "23*14", "34*14", "14*21"};
  for (int i = 0; i < 4; ++i) {
    const auto [x, y] = deep_products[i];
    check(deep_labels[i], g(x, y), hn[row.deep[i] - 1], nn + std::to_string(row.deep[i]));
  }
  const int r = row.previous;
  const std::string prev_name = np + std::to_string(r);
  check("11*" + nn + std::to_string(out.branch), g(a, hn[out.branch - 1]), hp[r - 1], prev_name);
  check(nn + std::to_string(r) + "*11", g(hn[r - 1], a), hp[r - 1], prev_name);
  return out;
}

}  // namespace quadlab
