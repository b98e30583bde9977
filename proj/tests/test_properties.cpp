#include <doctest.h>

#include <functional>
#include <random>

#include "quadlab/catalog.hpp"
#include "quadlab/properties.hpp"

using namespace quadlab;
using P = PropertyKind;

namespace {

// Every groupoid of order n, as a callback over tables.
void for_each_groupoid(std::size_t n, const std::function<void(const Groupoid&)>& f) {
  std::vector<Element> t(n * n, 0);
  while (true) {
    f(Groupoid(n, t));
    std::size_t i = 0;
    for (; i < t.size(); ++i) {
      if (++t[i] < n) break;
      t[i] = 0;
    }
    if (i == t.size()) return;
  }
}

Groupoid random_groupoid(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(n) - 1);
  std::vector<Element> t(n * n);
  for (auto& v : t) v = static_cast<Element>(d(rng));
  return Groupoid(n, std::move(t));
}

bool naive_alterable(const Groupoid& g) {
  const auto n = static_cast<Element>(g.order());
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        for (Element w = 0; w < n; ++w)
          if ((g(x, y) == g(z, w)) != (g(y, z) == g(w, x))) return false;
  return true;
}

// Right ideals by brute force over subsets: S nonempty with S·G ⊆ S.
bool naive_right_simple(const Groupoid& g) {
  const std::size_t n = g.order();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    bool ideal = true;
    for (Element s = 0; s < n && ideal; ++s)
      if (mask >> s & 1)
        for (Element x = 0; x < n && ideal; ++x)
          if (!(mask >> g(s, x) & 1)) ideal = false;
    if (ideal) return false;
  }
  return true;
}

const char* kQuadratical[] = {"Q1", "Q1_dual", "Q2", "Q3", "Q3_dual", "Q4", "Q4_dual",
                              "K",  "K_dual",  "G29", "G29_dual", "Q1xQ1", "Q1xQ1dual",
                              "Q1dualxQ1", "Q1dualxQ1dual", "Dudek9_1", "Dudek9_4"};

}  // namespace

TEST_CASE("identities of quadratical catalog entries") {
  const P props[] = {P::idempotent,        P::elastic,           P::strongly_elastic,
                     P::bookend,           P::left_distributive, P::right_distributive,
                     P::medial,            P::identity8,         P::identity9,
                     P::alterable,         P::property_A,        P::nowhere_commutative,
                     P::left_simple,       P::right_simple,      P::simple,
                     P::quasigroup,        P::left_cancellative, P::right_cancellative};
  for (const char* name : kQuadratical) {
    const Groupoid& g = catalog_get(name);
    for (P p : props) CHECK_MESSAGE(holds(g, p).holds, name << ": " << to_string(p));
    CHECK_MESSAGE(check_assoc_boundary(g), name);
    CHECK(g.order() % 4 == 1);
  }
}

TEST_CASE("small examples") {
  const Groupoid& e21 = catalog_get("Ex2_1");
  CHECK(holds(e21, P::left_distributive));
  CHECK(holds(e21, P::right_distributive));
  CHECK_FALSE(holds(e21, P::idempotent));
  const Groupoid& e22 = catalog_get("Ex2_2");
  CHECK(holds(e22, P::bookend));
  for (P p : {P::idempotent, P::elastic, P::medial}) {
    const Verdict v = holds(e22, p);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->lhs != v.witness->rhs);
  }
  CHECK_FALSE(is_quadratical(e22, QuadraticalMethod::all));
}

TEST_CASE("tags round trip") {
  for (P p : kAllProperties) CHECK(parse_property(to_string(p)) == p);
  for (auto m : kSingleMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS((void)parse_property("nope"), ParseError);
}

TEST_CASE("characterizations agree on every groupoid of order <= 3") {
  std::size_t quadratical = 0, total = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for_each_groupoid(n, [&](const Groupoid& g) {
      ++total;
      bool first = is_quadratical(g, kSingleMethods[0]);
      for (auto m : kSingleMethods) CHECK(is_quadratical(g, m) == first);
      quadratical += first;
    });
  CHECK(total == 1 + 16 + 19683);
  CHECK(quadratical == 1);  // only the trivial groupoid
}

TEST_CASE("characterizations agree on the catalog") {
  for (const auto& e : catalog()) {
    const Groupoid& g = catalog_get(e.name);
    CHECK_NOTHROW((void)is_quadratical(g, QuadraticalMethod::all));
  }
}

TEST_CASE("checkers against direct definitions") {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Groupoid g = random_groupoid(rng, 1 + i % 4);
    CHECK(holds(g, P::alterable).holds == naive_alterable(g));
    CHECK(holds(g, P::right_simple).holds == naive_right_simple(g));
    CHECK(holds(g, P::left_simple).holds == naive_right_simple(dual(g)));
  }
  for (const char* name : {"Q1", "Q2", "Ex2_2", "Ex8_2"}) {
    const Groupoid& g = catalog_get(name);
    CHECK(holds(g, P::alterable).holds == naive_alterable(g));
    CHECK(holds(g, P::right_simple).holds == naive_right_simple(g));
  }
}

namespace {

// Independent oracle: brute force over all tables of order <= 3.
bool brute_force_counterexample(std::span<const P> hyps, std::span<const P> concl) {
  bool found = false;
  for (std::size_t n = 1; n <= 3 && !found; ++n)
    for_each_groupoid(n, [&](const Groupoid& g) {
      if (found) return;
      for (P h : hyps)
        if (!holds(g, h)) return;
      for (P c : concl)
        if (!holds(g, c)) found = true;
    });
  return found;
}

struct Implication {
  const char* label;
  std::vector<P> hyps, concl;
};

const std::vector<Implication>& implications() {
  static const std::vector<Implication> t = {
      {"LD+RD+bookend => idempotent", {P::left_distributive, P::right_distributive, P::bookend}, {P::idempotent}},
      {"LD+RD+medial+bookend => cancellative", {P::left_distributive, P::right_distributive, P::medial, P::bookend},
       {P::left_cancellative, P::right_cancellative}},
      {"LD+RD+bookend => strongly elastic", {P::left_distributive, P::right_distributive, P::bookend}, {P::strongly_elastic}},
      {"left canc+medial+idem+s.elastic => bookend", {P::left_cancellative, P::medial, P::idempotent, P::strongly_elastic}, {P::bookend}},
      {"right canc+medial+idem+s.elastic => bookend", {P::right_cancellative, P::medial, P::idempotent, P::strongly_elastic}, {P::bookend}},
      {"idem+bookend+alterable => elastic", {P::idempotent, P::bookend, P::alterable}, {P::elastic}},
      {"elastic+bookend => idempotent", {P::elastic, P::bookend}, {P::idempotent}},
      {"elastic+idem+alterable => bookend", {P::elastic, P::idempotent, P::alterable}, {P::bookend}},
      {"medial+bookend => alterable", {P::medial, P::bookend}, {P::alterable}},
      {"LD+alterable+s.elastic => property A", {P::left_distributive, P::alterable, P::strongly_elastic}, {P::property_A}},
      {"RD+alterable+s.elastic => property A", {P::right_distributive, P::alterable, P::strongly_elastic}, {P::property_A}},
  };
  return t;
}

}  // namespace

TEST_CASE("implication sweeps") {
  SUBCASE("implications hold through order 4 and agree with brute force at order 3") {
    for (const auto& t : implications()) {
      const auto v = check_implication(t.hyps, t.concl, 4);
      CHECK_MESSAGE(!v.counterexample_found, t.label);
      CHECK(v.max_order == 4);
      CHECK_MESSAGE(!brute_force_counterexample(t.hyps, t.concl), t.label);
    }
  }
  SUBCASE("bookend alone implies none of idempotent, elastic, medial") {
    for (P c : {P::idempotent, P::elastic, P::medial}) {
      const P hyp[] = {P::bookend};
      const P concl[] = {c};
      const auto v = check_implication(hyp, concl, 4);
      REQUIRE(v.counterexample_found);
      REQUIRE(v.counterexample);
      CHECK(holds(*v.counterexample, P::bookend));
      CHECK_FALSE(holds(*v.counterexample, c));
    }
  }
  SUBCASE("sweep verdicts match brute force on non-theorems too") {
    const std::vector<std::pair<std::vector<P>, std::vector<P>>> cases = {
        {{P::idempotent}, {P::medial}},
        {{P::medial}, {P::idempotent}},
        {{P::left_distributive}, {P::right_distributive}},
        {{P::elastic}, {P::strongly_elastic}},
        {{P::medial, P::idempotent}, {P::left_distributive}},
    };
    for (const auto& [h, c] : cases) {
      const auto v = check_implication(h, c, 3);
      CHECK(v.counterexample_found == brute_force_counterexample(h, c));
    }
  }
}
