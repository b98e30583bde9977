#include "quadlab/properties.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace quadlab {

namespace {

struct PropertyInfo {
  PropertyKind kind;
  std::string_view tag;
  std::vector<std::string_view> equations;
};

const std::vector<PropertyInfo>& property_table() {
  static const std::vector<PropertyInfo> table = {
      {PropertyKind::idempotent, "idempotent", {"x*x = x"}},
      {PropertyKind::elastic, "elastic", {"x*(y*x) = (x*y)*x"}},
      {PropertyKind::strongly_elastic, "strongly_elastic", {"x*(y*x) = (x*y)*x", "(x*y)*x = (y*x)*y"}},
      {PropertyKind::bookend, "bookend", {"(y*x)*(x*y) = x"}},
      {PropertyKind::left_distributive, "left_distributive", {"x*(y*z) = (x*y)*(x*z)"}},
      {PropertyKind::right_distributive, "right_distributive", {"(x*y)*z = (x*z)*(y*z)"}},
      {PropertyKind::medial, "medial", {"(x*y)*(z*w) = (x*z)*(y*w)"}},
      {PropertyKind::identity8, "identity8", {"x*(y*(y*x)) = ((x*y)*x)*y"}},
      {PropertyKind::identity9, "identity9", {"((x*y)*y)*x = y*(x*(y*x))"}},
      {PropertyKind::alterable, "alterable", {}},
      {PropertyKind::property_A, "property_A", {"(x*y)*x = (z*x)*(y*z)"}},
      {PropertyKind::left_cancellative, "left_cancellative", {}},
      {PropertyKind::right_cancellative, "right_cancellative", {}},
      {PropertyKind::left_solvable, "left_solvable", {}},
      {PropertyKind::right_solvable, "right_solvable", {}},
      {PropertyKind::quasigroup, "quasigroup", {}},
      {PropertyKind::nowhere_commutative, "nowhere_commutative", {}},
      {PropertyKind::left_simple, "left_simple", {}},
      {PropertyKind::right_simple, "right_simple", {}},
      {PropertyKind::simple, "simple", {}},
  };
  return table;
}

const PropertyInfo& info(PropertyKind p) {
  return property_table()[static_cast<std::size_t>(p)];
}

std::string names_of(const Groupoid& g, std::span<const Element> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += kVariableNames[i];
    out += '=';
    out += g.name(xs[i]);
  }
  return out;
}

Verdict fail(Witness w) { return Verdict{false, std::move(w)}; }

// Calls f(vars) for every assignment of `arity` variables; stops early when
// f returns false.
template <class F>
bool for_each_assignment(std::size_t n, int arity, F&& f) {
  std::array<Element, 4> vars{};
  std::size_t total = 1;
  for (int i = 0; i < arity; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int i = arity - 1; i >= 0; --i) {
      vars[i] = static_cast<Element>(rest % n);
      rest /= n;
    }
    if (!f(vars.data())) return false;
  }
  return true;
}

Verdict check_alterable(const Groupoid& g) {
  const auto n = g.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        for (Element w = 0; w < n; ++w) {
          const bool left = g(x, y) == g(z, w);
          const bool right = g(y, z) == g(w, x);
          if (left != right) {
            const Element a[] = {x, y, z, w};
            return fail({{x, y, z, w}, g(y, z), g(w, x),
                         names_of(g, a) + (left ? ": x*y = z*w but y*z != w*x"
                                                : ": y*z = w*x but x*y != z*w")});
          }
        }
  return {};
}

// Row x (rows=true) or column x must be injective.
Verdict check_cancellative(const Groupoid& g, bool rows) {
  const auto n = g.order();
  for (Element x = 0; x < n; ++x) {
    std::vector<Element> seen(n, static_cast<Element>(n));
    for (Element y = 0; y < n; ++y) {
      const Element v = rows ? g(x, y) : g(y, x);
      if (seen[v] != n) {
        const Element z = seen[v];
        const Element a[] = {x, z, y};
        return fail({{x, z, y}, z, y,
                     names_of(g, a) + (rows ? ": x*y = x*z with y != z" : ": y*x = z*x with y != z")});
      }
      seen[v] = y;
    }
  }
  return {};
}

// For each a, b there must be exactly one x with a*x = b (rows=true) or x*a = b.
Verdict check_solvable(const Groupoid& g, bool rows) {
  const auto n = g.order();
  for (Element a = 0; a < n; ++a) {
    std::vector<int> count(n, 0);
    for (Element x = 0; x < n; ++x) ++count[rows ? g(a, x) : g(x, a)];
    for (Element b = 0; b < n; ++b) {
      if (count[b] != 1) {
        std::string detail = "a=" + g.name(a) + ", b=" + g.name(b) + ": " +
                             (rows ? "a*x = b" : "x*a = b") + " has " +
                             std::to_string(count[b]) + " solutions";
        return fail({{a, b}, static_cast<Element>(count[b]), 1, std::move(detail)});
      }
    }
  }
  return {};
}

Verdict check_nowhere_commutative(const Groupoid& g) {
  const auto n = g.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (g(x, y) == g(y, x)) {
        const Element a[] = {x, y};
        return fail({{x, y}, g(x, y), g(y, x), names_of(g, a) + ": x*y = y*x with x != y"});
      }
  return {};
}

// Closure of {i} under g*i (left), i*g (right) or both.
std::vector<Element> ideal_closure(const Groupoid& g, Element i, bool left, bool right) {
  const auto n = g.order();
  std::vector<char> in(n, 0);
  std::vector<Element> members{i};
  in[i] = 1;
  for (std::size_t idx = 0; idx < members.size(); ++idx) {
    const Element m = members[idx];
    for (Element x = 0; x < n; ++x) {
      if (left && !in[g(x, m)]) {
        in[g(x, m)] = 1;
        members.push_back(g(x, m));
      }
      if (right && !in[g(m, x)]) {
        in[g(m, x)] = 1;
        members.push_back(g(m, x));
      }
    }
  }
  return members;
}

Verdict check_simple(const Groupoid& g, bool left, bool right) {
  const auto n = g.order();
  for (Element i = 0; i < n; ++i) {
    const auto closure = ideal_closure(g, i, left, right);
    if (closure.size() != n) {
      const std::string kind = left && right ? "ideal" : left ? "left ideal" : "right ideal";
      return fail({{i}, static_cast<Element>(closure.size()), static_cast<Element>(n),
                   "the " + kind + " generated by " + g.name(i) + " has " +
                       std::to_string(closure.size()) + " of " + std::to_string(n) +
                       " elements"});
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(PropertyKind p) noexcept { return info(p).tag; }

PropertyKind parse_property(std::string_view tag) {
  for (const auto& pi : property_table())
    if (pi.tag == tag) return pi.kind;
  throw ParseError("unknown property '" + std::string(tag) + "'");
}

const std::vector<Identity>& identities_of(PropertyKind p) {
  static const auto all = [] {
    std::vector<std::vector<Identity>> out;
    for (const auto& pi : property_table()) {
      std::vector<Identity> ids;
      for (std::size_t i = 0; i < pi.equations.size(); ++i) {
        std::string name(pi.tag);
        if (pi.equations.size() > 1) name += "_" + std::to_string(i + 1);
        ids.push_back(Identity::parse(std::move(name), pi.equations[i]));
      }
      out.push_back(std::move(ids));
    }
    return out;
  }();
  return all[static_cast<std::size_t>(p)];
}

const std::vector<Identity>& quadratical_identities() {
  static const auto ids = [] {
    std::vector<Identity> out;
    for (PropertyKind p :
         {PropertyKind::idempotent, PropertyKind::bookend, PropertyKind::strongly_elastic,
          PropertyKind::left_distributive, PropertyKind::right_distributive,
          PropertyKind::medial, PropertyKind::identity8, PropertyKind::identity9}) {
      for (const auto& id : identities_of(p)) out.push_back(id);
    }
    return out;
  }();
  return ids;
}

Verdict holds(const Groupoid& g, const Identity& id) {
  std::optional<Witness> witness;
  for_each_assignment(g.order(), id.arity, [&](const Element* vars) {
    const Element l = id.lhs.eval(g, vars);
    const Element r = id.rhs.eval(g, vars);
    if (l == r) return true;
    std::vector<Element> a(vars, vars + id.arity);
    witness = Witness{a, l, r,
                      names_of(g, a) + ": " + id.lhs.str() + " = " + g.name(l) + " but " +
                          id.rhs.str() + " = " + g.name(r)};
    return false;
  });
  if (witness) return fail(std::move(*witness));
  return {};
}

Verdict holds(const Groupoid& g, PropertyKind p) {
  switch (p) {
    case PropertyKind::alterable:
      return check_alterable(g);
    case PropertyKind::left_cancellative:
      return check_cancellative(g, true);
    case PropertyKind::right_cancellative:
      return check_cancellative(g, false);
    case PropertyKind::right_solvable:
      return check_solvable(g, true);
    case PropertyKind::left_solvable:
      return check_solvable(g, false);
    case PropertyKind::quasigroup: {
      if (auto v = check_solvable(g, true); !v) return v;
      return check_solvable(g, false);
    }
    case PropertyKind::nowhere_commutative:
      return check_nowhere_commutative(g);
    case PropertyKind::left_simple:
      return check_simple(g, true, false);
    case PropertyKind::right_simple:
      return check_simple(g, false, true);
    case PropertyKind::simple:
      return check_simple(g, true, true);
    default:
      for (const auto& id : identities_of(p))
        if (auto v = holds(g, id); !v) return v;
      return {};
  }
}

// ---------------------------------------------------------------------------
// Characterizations
// ---------------------------------------------------------------------------

namespace {

struct MethodInfo {
  QuadraticalMethod method;
  std::string_view tag;
  std::vector<PropertyKind> props;
};

const std::vector<MethodInfo>& method_table() {
  using P = PropertyKind;
  static const std::vector<MethodInfo> table = {
      {QuadraticalMethod::definition, "definition", {P::right_solvable, P::property_A}},
      {QuadraticalMethod::thm2_11, "thm2_11", {P::idempotent, P::bookend, P::medial}},
      {QuadraticalMethod::thm2_16, "thm2_16", {P::elastic, P::bookend, P::medial}},
      {QuadraticalMethod::thm2_20, "thm2_20", {P::elastic, P::medial, P::idempotent, P::alterable}},
      {QuadraticalMethod::thm2_24, "thm2_24",
       {P::left_distributive, P::right_distributive, P::bookend, P::alterable}},
      {QuadraticalMethod::cor2_5, "cor2_5", {P::medial, P::idempotent, P::property_A}},
      {QuadraticalMethod::all, "all", {}},
  };
  return table;
}

}  // namespace

std::string_view to_string(QuadraticalMethod m) noexcept {
  return method_table()[static_cast<std::size_t>(m)].tag;
}

QuadraticalMethod parse_method(std::string_view tag) {
  for (const auto& mi : method_table())
    if (mi.tag == tag) return mi.method;
  throw ParseError("unknown method '" + std::string(tag) + "'");
}

std::span<const PropertyKind> method_properties(QuadraticalMethod m) {
  return method_table()[static_cast<std::size_t>(m)].props;
}

bool is_quadratical(const Groupoid& g, QuadraticalMethod method) {
  if (method != QuadraticalMethod::all) {
    for (PropertyKind p : method_properties(method))
      if (!holds(g, p)) return false;
    return true;
  }
  std::map<PropertyKind, bool> decided;
  auto get = [&](PropertyKind p) {
    auto it = decided.find(p);
    if (it == decided.end()) it = decided.emplace(p, holds(g, p).holds).first;
    return it->second;
  };
  std::optional<bool> first;
  std::string tally;
  bool disagree = false;
  for (QuadraticalMethod m : kSingleMethods) {
    bool ok = true;
    for (PropertyKind p : method_properties(m)) ok = ok && get(p);
    tally += std::string(to_string(m)) + "=" + (ok ? "true " : "false ");
    if (!first) first = ok;
    else if (*first != ok) disagree = true;
  }
  if (disagree) throw CharacterizationDisagreement("characterizations disagree: " + tally);
  return *first;
}

bool check_assoc_boundary(const Groupoid& g) {
  if (!is_quadratical(g, QuadraticalMethod::all)) {
    throw PreconditionError("check_assoc_boundary requires a quadratical quasigroup");
  }
  const auto n = g.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if ((g(x, g(y, z)) == g(g(x, y), z)) != (x == z)) return false;
  return true;
}

}  // namespace quadlab
