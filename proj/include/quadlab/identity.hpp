#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "quadlab/groupoid.hpp"

namespace quadlab {

/// A groupoid term over the variables x, y, z, w.
class Term {
 public:
  struct Node {
    std::int8_t var = -1;  // >= 0 for a variable leaf
    std::int8_t left = -1;
    std::int8_t right = -1;
  };

  /// Parses e.g. "x*(y*x)". '*' is left associative; juxtaposition is not
  /// accepted.
  static Term parse(std::string_view text);

  [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] int root() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  [[nodiscard]] int arity() const noexcept;  // 1 + highest variable index
  [[nodiscard]] std::string str() const;

  /// Value under a total table.
  [[nodiscard]] Element eval(const Groupoid& g, const Element* vars) const {
    return eval_at(g, vars, root());
  }

  /// Value under a partial lookup `cell(a, b) -> int` (negative = unknown).
  /// Every cell read is reported to `read(a, b)`.
  template <class Cell, class Read>
  int eval_partial(const Element* vars, Cell&& cell, Read&& read) const {
    return eval_partial_at(vars, cell, read, root());
  }

  template <class Cell, class Read>
  int eval_partial_at(const Element* vars, Cell& cell, Read& read, int at) const {
    const Node& nd = nodes_[at];
    if (nd.var >= 0) return vars[nd.var];
    const int a = eval_partial_at(vars, cell, read, nd.left);
    if (a < 0) return -1;
    const int b = eval_partial_at(vars, cell, read, nd.right);
    if (b < 0) return -1;
    const int v = cell(a, b);
    if (v >= 0) read(a, b);
    return v;
  }

 private:
  Element eval_at(const Groupoid& g, const Element* vars, int at) const {
    const Node& nd = nodes_[at];
    if (nd.var >= 0) return vars[nd.var];
    return g(eval_at(g, vars, nd.left), eval_at(g, vars, nd.right));
  }

  void str_at(int at, std::string& out, bool top) const;

  std::vector<Node> nodes_;
};

/// An equation lhs = rhs, universally quantified over its variables.
struct Identity {
  std::string name;
  Term lhs;
  Term rhs;
  int arity = 0;

  /// "name" plus a text like "(y*x)*(x*y) = x".
  static Identity parse(std::string name, std::string_view equation);
  [[nodiscard]] std::string str() const;
};

/// Variable letters in order: x, y, z, w.
inline constexpr std::string_view kVariableNames = "xyzw";

}  // namespace quadlab
