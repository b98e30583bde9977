#include "quadlab/identity.hpp"

#include <algorithm>
#include <cctype>

namespace quadlab {

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::vector<Term::Node>& nodes) : text_(text), nodes_(nodes) {}

  int parse_all() {
    const int root = product();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return root;
  }

 private:
  int product() {
    int left = atom();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        const int right = atom();
        left = push(Term::Node{-1, static_cast<std::int8_t>(left), static_cast<std::int8_t>(right)});
      } else {
        return left;
      }
    }
  }

  int atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = product();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    const auto var = kVariableNames.find(c);
    if (var == std::string_view::npos) fail(std::string("unexpected '") + c + "'");
    ++pos_;
    return push(Term::Node{static_cast<std::int8_t>(var), -1, -1});
  }

  int push(Term::Node nd) {
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("term '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::vector<Term::Node>& nodes_;
  std::size_t pos_ = 0;
};

}  // namespace

Term Term::parse(std::string_view text) {
  Term t;
  std::vector<Node> raw;
  const int root = TermParser(text, raw).parse_all();
  // Re-emit in post-order so the root is the last node.
  auto emit = [&](auto&& self, int at) -> int {
    Node nd = raw[at];
    if (nd.var < 0) {
      nd.left = static_cast<std::int8_t>(self(self, nd.left));
      nd.right = static_cast<std::int8_t>(self(self, nd.right));
    }
    t.nodes_.push_back(nd);
    return static_cast<int>(t.nodes_.size()) - 1;
  };
  emit(emit, root);
  return t;
}

int Term::arity() const noexcept {
  int a = 0;
  for (const auto& nd : nodes_) a = std::max(a, nd.var + 1);
  return a;
}

void Term::str_at(int at, std::string& out, bool top) const {
  const Node& nd = nodes_[at];
  if (nd.var >= 0) {
    out += kVariableNames[nd.var];
    return;
  }
  if (!top) out += '(';
  str_at(nd.left, out, false);
  out += '*';
  str_at(nd.right, out, false);
  if (!top) out += ')';
}

std::string Term::str() const {
  std::string out;
  str_at(root(), out, true);
  return out;
}

Identity Identity::parse(std::string name, std::string_view equation) {
  const auto eq = equation.find('=');
  if (eq == std::string_view::npos) throw Error("identity without '='");
  Identity id{std::move(name), Term::parse(equation.substr(0, eq)),
              Term::parse(equation.substr(eq + 1)), 0};
  id.arity = std::max(id.lhs.arity(), id.rhs.arity());
  return id;
}

std::string Identity::str() const { return lhs.str() + " = " + rhs.str(); }

}  // namespace quadlab
