#include "quadlab/catalog.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "quadlab/properties.hpp"
#include "quadlab/structure.hpp"

namespace quadlab {

namespace {

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// A translatable seed given by an element ordering and the first row in
// element names.
TranslatableSeed named_seed(std::size_t k, const std::vector<std::string>& order,
                            std::string_view row) {
  TranslatableSeed s{order.size(), k, {}};
  for (const auto& w : words(row)) {
    const auto it = std::find(order.begin(), order.end(), w);
    if (it == order.end()) throw Error("seed names unknown element " + w);
    s.first_row.push_back(static_cast<Element>(it - order.begin()));
  }
  return s;
}

TranslatableSeed numeric_seed(std::size_t k, std::string_view row) {
  TranslatableSeed s{0, k, {}};
  for (const auto& w : words(row)) s.first_row.push_back(static_cast<Element>(std::stoi(w) - 1));
  s.order = s.first_row.size();
  return s;
}

std::vector<std::string> pair_names(std::size_t p) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y) out.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  return out;
}

CatalogEntry dudek(int i, std::vector<std::vector<long>> phi) {
  return {"Dudek9_" + std::to_string(i),
          AffineSpec{{3, 3}, std::move(phi)},
          pair_names(3),
          {{"order", "9"}, {"quadratical", "true"}, {"form", "2"}},
          "order-9 quadratical quasigroup over Z3 x Z3, formula " + std::to_string(i)};
}

std::vector<CatalogEntry> build_catalog() {
  const DerivedTable::Op dual_op = DerivedTable::Op::dual, prod = DerivedTable::Op::product;
  const auto q3_order = words("11 14 34 12 23 24 33 aba 32 21 22 13 31");
  const auto q4_order = words("11 14 23 24 43 31 41 12 33 aba 32 13 44 34 42 21 22");
  const auto g29_order =
      words("11 14 44 34 42 74 21 22 64 13 53 72 63 54 33 aba 32 51 62 73 52 12 61 23 24 71 43 31 41");
  const std::vector<Expectation> quad5 = {{"order", "5"}, {"quadratical", "true"}, {"form", "1"}};
  const std::vector<Expectation> quad25 = {{"order", "25"}, {"quadratical", "true"}, {"form", "none"}};

  std::vector<CatalogEntry> c;
  c.push_back({"Q1", LiteralTable{R"(5
#names: a ab ba b aba
a   ba  aba ab  b
aba ab  b   a   ba
b   a   ba  aba ab
ba  aba ab  b   a
ab  b   a   ba  aba
)"},
               {}, quad5, "form Q1, branch n2"});
  c.push_back({"Q1_dual", DerivedTable{dual_op, "Q1", {}}, {}, quad5, "dual of Q1"});
  c.push_back({"Q2", LiteralTable{R"(9
#names: a ab ba b aba 21 22 23 24
a   21  aba ab  24  ba  b   22  23
aba ab  b   22  23  24  a   21  ba
23  a   ba  aba 22  ab  24  b   21
ba  aba 24  b   21  22  23  a   ab
22  24  21  23  aba a   ab  ba  b
24  b   23  a   ab  21  ba  aba 22
21  23  ab  ba  b   aba 22  24  a
ab  ba  22  24  a   b   21  23  aba
b   22  a   21  ba  23  aba ab  24
)"},
               {},
               {{"order", "9"}, {"quadratical", "true"}, {"form", "2"}, {"translatable_as_ordered", "none"}},
               "form Q2, branch n2"});
  c.push_back({"Q3", BranchChoice{3, 1}, {}, {{"order", "13"}, {"quadratical", "true"}, {"form", "3"}},
               "completion of form Q3, branch n1"});
  c.push_back({"Q3_dual", DerivedTable{dual_op, "Q3", {}}, {},
               {{"order", "13"}, {"quadratical", "true"}, {"form", "3"}}, "dual of Q3"});
  c.push_back({"Q3_seq", named_seed(5, q3_order, "11 12 33 21 31 34 24 32 13 14 23 aba 22"), q3_order,
               {{"order", "13"}, {"quadratical", "true"}, {"translatable_as_ordered", "5"}},
               "Q3 from its 5-translatable sequence"});
  c.push_back({"Q4", BranchChoice{4, 2}, {}, {{"order", "17"}, {"quadratical", "true"}, {"form", "4"}},
               "completion of form Q4, branch n2"});
  c.push_back({"Q4_dual", DerivedTable{dual_op, "Q4", {}}, {},
               {{"order", "17"}, {"quadratical", "true"}, {"form", "4"}}, "dual of Q4"});
  c.push_back({"Q4_seq",
               named_seed(13, q4_order, "11 12 42 43 13 14 33 21 31 44 23 aba 22 41 34 24 32"),
               q4_order,
               {{"order", "17"}, {"quadratical", "true"}, {"translatable_as_ordered", "13"}},
               "Q4 from its 13-translatable sequence"});
  c.push_back({"K",
               numeric_seed(7, "1 5 9 13 17 21 25 4 8 12 16 20 24 3 7 11 15 19 23 2 6 10 14 18 22"),
               {},
               {{"order", "25"}, {"quadratical", "true"}, {"form", "none"}, {"translatable_as_ordered", "7"}},
               "7-translatable quadratical quasigroup of order 25"});
  c.push_back({"K_dual", DerivedTable{dual_op, "K", {}}, {},
               {{"order", "25"}, {"quadratical", "true"}, {"form", "none"}, {"translatable_as_ordered", "18"}},
               "dual of K"});
  c.push_back({"K_dual_seq",
               numeric_seed(18, "1 23 20 17 14 11 8 5 2 24 21 18 15 12 9 6 3 25 22 19 16 13 10 7 4"),
               {},
               {{"order", "25"}, {"quadratical", "true"}, {"translatable_as_ordered", "18"}},
               "dual of K from its 18-translatable sequence"});
  c.push_back({"G29",
               named_seed(12, g29_order,
                          "11 12 54 74 43 62 53 44 23 aba 22 41 52 63 42 71 51 13 14 61 33 21 31 73 72 34 24 32 64"),
               g29_order,
               {{"order", "29"}, {"quadratical", "true"}, {"form", "7"}, {"translatable_as_ordered", "12"}},
               "12-translatable quadratical quasigroup of form Q7"});
  c.push_back({"G29_dual", DerivedTable{dual_op, "G29", {}}, {},
               {{"order", "29"}, {"quadratical", "true"}, {"form", "7"}, {"translatable_as_ordered", "17"}},
               "dual of G29"});
  c.push_back({"Q1xQ1", DerivedTable{prod, "Q1", "Q1"}, {}, quad25, "Q1 x Q1"});
  c.push_back({"Q1xQ1dual", DerivedTable{prod, "Q1", "Q1_dual"}, {}, quad25, "Q1 x dual(Q1)"});
  c.push_back({"Q1dualxQ1", DerivedTable{prod, "Q1_dual", "Q1"}, {}, quad25, "dual(Q1) x Q1"});
  c.push_back({"Q1dualxQ1dual", DerivedTable{prod, "Q1_dual", "Q1_dual"}, {}, quad25,
               "dual(Q1) x dual(Q1)"});
  c.push_back({"Ex2_1", LiteralTable{"2\n1 1\n1 1\n"}, {},
               {{"order", "2"}, {"idempotent", "false"}, {"left_distributive", "true"},
                {"right_distributive", "true"}},
               "constant product: distributive, not idempotent"});
  c.push_back({"Ex2_2", LiteralTable{R"(4
#names: x y z w
y z w y
w x w x
y x w y
z z x z
)"},
               {},
               {{"order", "4"}, {"bookend", "true"}, {"idempotent", "false"}, {"elastic", "false"},
                {"medial", "false"}},
               "bookend, not idempotent, elastic or medial"});
  c.push_back({"Ex8_2", LiteralTable{"5\n1 4 2 5 3\n4 2 5 3 1\n2 5 3 1 4\n5 3 1 4 2\n3 1 4 2 5\n"}, {},
               {{"order", "5"}, {"idempotent", "true"}, {"bookend", "false"},
                {"translatable_as_ordered", "4"}},
               "idempotent 4-translatable groupoid"});
  c.push_back({"Ex8_3", LiteralTable{"5\n2 1 3 4 5\n1 3 4 5 2\n3 4 5 2 1\n4 5 2 1 3\n5 2 1 3 4\n"}, {},
               {{"order", "5"}, {"idempotent", "false"}, {"translatable_as_ordered", "4"}},
               "4-translatable groupoid without idempotents"});
  c.push_back(dudek(1, {{0, 1}, {1, 1}}));
  c.push_back(dudek(2, {{0, 2}, {2, 1}}));
  c.push_back(dudek(3, {{1, 1}, {1, 0}}));
  c.push_back(dudek(4, {{1, 2}, {2, 0}}));
  c.push_back(dudek(5, {{2, 1}, {2, 2}}));
  c.push_back(dudek(6, {{2, 2}, {1, 2}}));
  return c;
}

Groupoid build(const CatalogEntry& e) {
  struct Visitor {
    const CatalogEntry& e;
    Groupoid operator()(const BranchChoice& b) const {
      CompletionOptions opt;
      opt.max_solutions = 1;
      opt.record_trace = false;
      const auto r = complete_form_Qn(b, opt);
      if (!r.table) throw Error(e.name + ": completion found no table");
      return *r.table;
    }
    Groupoid operator()(const TranslatableSeed& s) const { return from_translatable(s); }
    Groupoid operator()(const AffineSpec& s) const { return build_affine(s); }
    Groupoid operator()(const LiteralTable& t) const { return parse_table(t.text); }
    Groupoid operator()(const DerivedTable& d) const {
      if (d.op == DerivedTable::Op::dual) return dual(catalog_get(d.left));
      return direct_product(catalog_get(d.left), catalog_get(d.right));
    }
  };
  Groupoid g = std::visit(Visitor{e}, e.source);
  if (!e.names.empty()) g = g.with_names(e.names);
  return g;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw UnknownEntry("unknown catalog entry: " + std::string(name));
}

const Groupoid& catalog_get(std::string_view name) {
  static std::recursive_mutex mu;
  static std::map<std::string, Groupoid, std::less<>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const CatalogEntry& e = catalog_entry(name);
  return cache.emplace(e.name, build(e)).first->second;
}

std::string evaluate_check(const Groupoid& g, const std::string& check) {
  auto yes_no = [](bool b) { return std::string(b ? "true" : "false"); };
  if (check == "order") return std::to_string(g.order());
  if (check == "quadratical") return yes_no(is_quadratical(g, QuadraticalMethod::all));
  if (check == "form") {
    if (!is_quadratical(g)) return "none";
    const auto f = detect_form_Qn(g);
    return f ? std::to_string(f->n) : "none";
  }
  if (check == "translatable_as_ordered") {
    std::string ks;
    for (std::size_t k = 1; k <= g.order(); ++k)
      if (is_k_translatable(g, k)) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    return ks.empty() ? "none" : ks;
  }
  return yes_no(holds(g, parse_property(check)).holds);
}

std::vector<std::string> catalog_self_test() {
  std::vector<std::string> failures;
  for (const auto& e : catalog()) {
    try {
      const Groupoid& g = catalog_get(e.name);
      for (const auto& x : e.expected) {
        const std::string got = evaluate_check(g, x.check);
        if (got != x.value)
          failures.push_back(e.name + ": " + x.check + " = " + got + ", expected " + x.value);
      }
    } catch (const Error& err) {
      failures.push_back(e.name + ": " + err.what());
    }
  }
  return failures;
}

}  // namespace quadlab
