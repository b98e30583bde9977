#include "quadlab/groupoid.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace quadlab {

Groupoid::Groupoid(std::size_t order, std::vector<Element> table,
                   std::vector<std::string> names)
    : order_(order), table_(std::move(table)), names_(std::move(names)) {
  if (order_ == 0) throw Error("groupoid order must be positive");
  if (order_ > 0xFFFF) throw Error("groupoid order too large");
  if (table_.size() != order_ * order_) {
    throw Error("table has " + std::to_string(table_.size()) + " entries, expected " +
                std::to_string(order_ * order_));
  }
  for (Element v : table_) {
    if (v >= order_) throw Error("table entry " + std::to_string(v + 1) + " out of range");
  }
  if (!names_.empty()) {
    if (names_.size() != order_) {
      throw Error("expected " + std::to_string(order_) + " names, got " +
                  std::to_string(names_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& nm : names_) {
      if (nm.empty()) throw Error("empty element name");
      if (!seen.insert(nm).second) throw Error("duplicate element name '" + nm + "'");
    }
  }
}

Element Groupoid::product(Element x, Element y) const {
  if (x >= order_ || y >= order_) throw PreconditionError("element index out of range");
  return (*this)(x, y);
}

std::string Groupoid::name(Element x) const {
  if (!names_.empty()) return names_.at(x);
  return std::to_string(static_cast<unsigned>(x) + 1);
}

std::optional<Element> Groupoid::find(std::string_view token) const {
  if (!names_.empty()) {
    auto it = std::find(names_.begin(), names_.end(), token);
    if (it != names_.end()) return static_cast<Element>(it - names_.begin());
  }
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  if (value < 1 || value > order_) return std::nullopt;
  return static_cast<Element>(value - 1);
}

Groupoid Groupoid::with_names(std::vector<std::string> names) const {
  return Groupoid(order_, table_, std::move(names));
}

Groupoid Groupoid::without_names() const { return Groupoid(order_, table_); }

bool same_table(const Groupoid& a, const Groupoid& b) noexcept {
  return a.order() == b.order() && std::ranges::equal(a.cells(), b.cells());
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Groupoid parse_table(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw ParseError("malformed header: empty input");

  auto header = split_ws(lines[0]);
  unsigned order = 0;
  if (header.size() != 1) throw ParseError("malformed header: expected the order alone");
  {
    const auto& h = header[0];
    auto [ptr, ec] = std::from_chars(h.data(), h.data() + h.size(), order);
    if (ec != std::errc{} || ptr != h.data() + h.size() || order == 0) {
      throw ParseError("malformed header: '" + h + "' is not a positive order");
    }
  }

  std::size_t next = 1;
  std::vector<std::string> names;
  if (next < lines.size() && lines[next].rfind("#names:", 0) == 0) {
    names = split_ws(lines[next].substr(7));
    if (names.size() != order) {
      throw ParseError("names line has " + std::to_string(names.size()) + " tokens, expected " +
                       std::to_string(order));
    }
    std::unordered_set<std::string> seen;
    for (const auto& nm : names) {
      if (!seen.insert(nm).second) throw ParseError("duplicate name '" + nm + "'");
    }
    ++next;
  }

  if (lines.size() - next != order) {
    throw ParseError("expected " + std::to_string(order) + " rows, found " +
                     std::to_string(lines.size() - next));
  }

  // Resolution only needs the names, so a table-less lookup object is enough.
  auto resolve = [&](const std::string& tok) -> Element {
    if (!names.empty()) {
      auto it = std::find(names.begin(), names.end(), tok);
      if (it != names.end()) return static_cast<Element>(it - names.begin());
    }
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("unknown entry '" + tok + "'");
    }
    if (value < 1 || value > order) throw ParseError("entry " + tok + " out of range");
    return static_cast<Element>(value - 1);
  };

  std::vector<Element> table;
  table.reserve(static_cast<std::size_t>(order) * order);
  for (unsigned r = 0; r < order; ++r) {
    auto toks = split_ws(lines[next + r]);
    if (toks.size() != order) {
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(toks.size()) +
                       " entries, expected " + std::to_string(order));
    }
    for (const auto& tok : toks) table.push_back(resolve(tok));
  }
  return Groupoid(order, std::move(table), std::move(names));
}

Groupoid parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_table(in);
}

void serialize_table(const Groupoid& g, std::ostream& out) {
  const auto n = g.order();
  out << n << '\n';
  if (g.has_names()) {
    out << "#names:";
    for (const auto& nm : g.names()) out << ' ' << nm;
    out << '\n';
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c) out << ' ';
      out << g.name(g(static_cast<Element>(r), static_cast<Element>(c)));
    }
    out << '\n';
  }
}

std::string serialize_table(const Groupoid& g) {
  std::ostringstream out;
  serialize_table(g, out);
  return out.str();
}

Groupoid read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_table(in);
}

void write_table_file(const Groupoid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  serialize_table(g, out);
}

// ---------------------------------------------------------------------------
// Structural operations
// ---------------------------------------------------------------------------

Groupoid dual(const Groupoid& g) {
  const auto n = g.order();
  std::vector<Element> t(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      t[r * n + c] = g(static_cast<Element>(c), static_cast<Element>(r));
  return Groupoid(n, std::move(t), g.names());
}

Groupoid direct_product(const Groupoid& g, const Groupoid& h) {
  const auto ng = g.order();
  const auto nh = h.order();
  const auto n = ng * nh;
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto xg = static_cast<Element>(x / nh), xh = static_cast<Element>(x % nh);
    for (std::size_t y = 0; y < n; ++y) {
      const auto yg = static_cast<Element>(y / nh), yh = static_cast<Element>(y % nh);
      t[x * n + y] = static_cast<Element>(g(xg, yg) * nh + h(xh, yh));
    }
  }
  std::vector<std::string> names;
  if (g.has_names() || h.has_names()) {
    names.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
      names.push_back("(" + g.name(static_cast<Element>(x / nh)) + "," +
                      h.name(static_cast<Element>(x % nh)) + ")");
    }
  }
  return Groupoid(n, std::move(t), std::move(names));
}

Groupoid relabel(const Groupoid& g, std::span<const Element> map) {
  const auto n = g.order();
  if (map.size() != n) throw PreconditionError("relabel: map has wrong size");
  std::vector<Element> t(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      t[map[r] * n + map[c]] = map[g(static_cast<Element>(r), static_cast<Element>(c))];
  std::vector<std::string> names;
  if (g.has_names()) {
    names.resize(n);
    for (std::size_t x = 0; x < n; ++x) names[map[x]] = g.names()[x];
  }
  return Groupoid(n, std::move(t), std::move(names));
}

std::vector<Element> generated_subgroupoid(const Groupoid& g, std::span<const Element> seed) {
  if (seed.empty()) throw PreconditionError("generated_subgroupoid: empty generating set");
  const auto n = g.order();
  std::vector<char> in(n, 0);
  std::vector<Element> members;
  for (Element s : seed) {
    if (s >= n) throw PreconditionError("generated_subgroupoid: element out of range");
    if (!in[s]) {
      in[s] = 1;
      members.push_back(s);
    }
  }
  // members[0..idx] are closed under products among themselves once idx passes them.
  for (std::size_t idx = 0; idx < members.size(); ++idx) {
    for (std::size_t j = 0; j <= idx; ++j) {
      const Element a = members[idx], b = members[j];
      for (Element v : {g(a, b), g(b, a)}) {
        if (!in[v]) {
          in[v] = 1;
          members.push_back(v);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

bool pair_generates(const Groupoid& g, Element a, Element b) {
  const Element seed[] = {a, b};
  return generated_subgroupoid(g, seed).size() == g.order();
}

}  // namespace

bool is_two_generated(const Groupoid& g) {
  const auto n = g.order();
  if (n < 2) throw PreconditionError("is_two_generated: order must be at least 2");
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (pair_generates(g, a, b)) return true;
  return false;
}

bool generated_by_any_two(const Groupoid& g) {
  const auto n = g.order();
  if (n < 2) throw PreconditionError("generated_by_any_two: order must be at least 2");
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (!pair_generates(g, a, b)) return false;
  return true;
}

}  // namespace quadlab
