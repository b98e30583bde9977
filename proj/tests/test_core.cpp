#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "quadlab/catalog.hpp"
#include "quadlab/groupoid.hpp"

using namespace quadlab;

namespace {

Groupoid random_groupoid(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(n) - 1);
  std::vector<Element> t(n * n);
  for (auto& v : t) v = static_cast<Element>(d(rng));
  return Groupoid(n, std::move(t));
}

std::vector<Element> random_perm(std::mt19937& rng, std::size_t n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), Element{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Closure by repeated squaring of the set, independent of the library code.
std::vector<Element> naive_closure(const Groupoid& g, std::vector<Element> s) {
  std::vector<char> in(g.order(), 0);
  for (Element x : s) in[x] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        if (in[x] && in[y] && !in[g(x, y)]) in[g(x, y)] = grew = true;
  }
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

const char* kQuadratical[] = {"Q1", "Q1_dual", "Q2", "Q3", "Q3_dual", "Q4", "Q4_dual",
                              "K",  "K_dual",  "G29", "G29_dual"};

}  // namespace

TEST_CASE("text format") {
  SUBCASE("names and integers mix") {
    const Groupoid g = parse_table("2\n#names: p q\np 2\nq 1\n");
    CHECK(g.order() == 2);
    CHECK(g(0, 1) == 1);
    CHECK(g(1, 1) == 0);
    CHECK(g.name(1) == "q");
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS((void)parse_table(""), ParseError);
    CHECK_THROWS_AS((void)parse_table("x\n"), ParseError);
    CHECK_THROWS_AS((void)parse_table("2\n1 2\n"), ParseError);
    CHECK_THROWS_AS((void)parse_table("2\n1 3\n1 1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_table("2\n1 2 1\n1 1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_table("2\n#names: a a\na a\na a\n"), ParseError);
  }
  SUBCASE("round trip on the catalog") {
    for (const auto& e : catalog()) {
      const Groupoid& g = catalog_get(e.name);
      CHECK_MESSAGE(parse_table(serialize_table(g)) == g, e.name);
    }
  }
  SUBCASE("round trip on random tables") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
      const Groupoid g = random_groupoid(rng, 1 + i % 7);
      CHECK(parse_table(serialize_table(g)) == g);
    }
  }
}

TEST_CASE("dual is an involution") {
  for (const auto& e : catalog()) {
    const Groupoid& g = catalog_get(e.name);
    CHECK_MESSAGE(dual(dual(g)) == g, e.name);
  }
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    const Groupoid g = random_groupoid(rng, 1 + i % 6);
    CHECK(same_table(dual(dual(g)), g));
  }
}

TEST_CASE("direct product indexing") {
  const Groupoid& q1 = catalog_get("Q1");
  const Groupoid p = direct_product(q1, dual(q1));
  for (Element x = 0; x < p.order(); ++x)
    for (Element y = 0; y < p.order(); ++y) {
      const Element v = p(x, y);
      CHECK(v / 5 == q1(x / 5, y / 5));
      CHECK(v % 5 == q1(y % 5, x % 5));
    }
  CHECK(p.name(1) == "(a,ab)");
}

TEST_CASE("closure") {
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 2 + i % 6;
    const Groupoid g = random_groupoid(rng, n);
    std::vector<Element> a = {static_cast<Element>(i % n)};
    std::vector<Element> b = a;
    b.push_back(static_cast<Element>((i * 7 + 1) % n));
    const auto ca = generated_subgroupoid(g, a);
    const auto cb = generated_subgroupoid(g, b);
    CHECK(ca == naive_closure(g, a));
    CHECK(std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()));
    CHECK(generated_subgroupoid(g, ca) == ca);
  }
}

TEST_CASE("two-generation") {
  CHECK(generated_by_any_two(catalog_get("Q1")));
  CHECK(generated_by_any_two(catalog_get("Q2")));
  CHECK(is_two_generated(catalog_get("Q1xQ1dual")));
  CHECK_FALSE(is_two_generated(catalog_get("Q1xQ1")));
  CHECK_FALSE(generated_by_any_two(catalog_get("K")));
}

TEST_CASE("isomorphism is an equivalence") {
  std::mt19937 rng(5);
  for (const char* name : {"Q1", "Q2", "Q3", "K"}) {
    const Groupoid& g = catalog_get(name);
    const auto id = find_isomorphism(g, g);
    REQUIRE(id);
    CHECK(is_isomorphism(g, g, *id));
    const Groupoid h = relabel(g, random_perm(rng, g.order()));
    const Groupoid k = relabel(h, random_perm(rng, g.order()));
    const auto gh = find_isomorphism(g, h);
    const auto hk = find_isomorphism(h, k);
    REQUIRE(gh);
    REQUIRE(hk);
    CHECK(is_isomorphism(h, g, gh->inverse()));
    CHECK(is_isomorphism(g, k, gh->then(*hk)));
  }
}

TEST_CASE("canonical form") {
  std::mt19937 rng(13);
  SUBCASE("idempotent and relabeling invariant on the catalog") {
    for (const auto& e : catalog()) {
      const Groupoid& g = catalog_get(e.name);
      const Groupoid c = canonical_form(g);
      CHECK_MESSAGE(canonical_form(c) == c, e.name);
      CHECK_MESSAGE(canonical_form(relabel(g, random_perm(rng, g.order()))) == c, e.name);
      CHECK(is_isomorphism(g, c, canonical_labeling(g)));
    }
  }
  SUBCASE("random tables") {
    for (int i = 0; i < 60; ++i) {
      const std::size_t n = 1 + i % 5;
      const Groupoid g = random_groupoid(rng, n);
      const Groupoid c = canonical_form(g);
      CHECK(canonical_form(c) == c);
      CHECK(canonical_form(relabel(g, random_perm(rng, n))) == c);
    }
  }
  SUBCASE("separates non-isomorphic tables") {
    CHECK(canonical_form(catalog_get("Q3")) != canonical_form(catalog_get("Q3_dual")));
    CHECK_FALSE(find_isomorphism(catalog_get("Q3"), catalog_get("Q3_dual")));
  }
}

TEST_CASE("automorphisms of the affine order-5 quasigroup") {
  // x*y = 3x + 4y over Z5: the affine maps x -> ax + b with a != 0 all
  // commute with it, so there are 20.
  const auto autos = automorphisms(catalog_get("Q1"));
  CHECK(autos.size() == 20);
  for (const auto& a : autos) CHECK(is_isomorphism(catalog_get("Q1"), catalog_get("Q1"), a));
}

TEST_CASE("catalog quadratical entries are pairwise distinguished") {
  for (const char* a : kQuadratical)
    for (const char* b : kQuadratical) {
      if (std::string_view(a) >= std::string_view(b)) continue;
      const bool same = canonical_form(catalog_get(a)) == canonical_form(catalog_get(b));
      CHECK_MESSAGE(!same, a << " vs " << b);
    }
}
