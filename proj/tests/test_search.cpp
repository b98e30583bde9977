#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>

#include "quadlab/catalog.hpp"
#include "quadlab/properties.hpp"
#include "quadlab/search.hpp"

using namespace quadlab;

namespace {

std::set<std::vector<Element>> keys(const std::vector<Groupoid>& gs) {
  std::set<std::vector<Element>> out;
  for (const auto& g : gs) out.insert({g.cells().begin(), g.cells().end()});
  return out;
}

void check_representatives(const EnumerationResult& r) {
  for (const auto& g : r.representatives) {
    CHECK(g.order() == r.order);
    CHECK(is_quadratical(g, QuadraticalMethod::all));
    CHECK(holds(g, PropertyKind::nowhere_commutative));
    CHECK(holds(g, PropertyKind::left_simple));
    CHECK(holds(g, PropertyKind::right_simple));
    CHECK(canonical_form(g) == g);
  }
  CHECK(keys(r.representatives).size() == r.representatives.size());
  // Closed under duality.
  const auto ks = keys(r.representatives);
  for (const auto& g : r.representatives) {
    const Groupoid d = canonical_form(dual(g));
    CHECK(ks.count({d.cells().begin(), d.cells().end()}) == 1);
  }
}

// Every class of an affine quasigroup over an elementary abelian p-group of
// rank m, by brute force over all m×m matrices mod p and conjugation by
// GL(m, p).
std::size_t brute_force_classes(long p, std::size_t m) {
  std::vector<std::vector<long>> roots, gl;
  const std::size_t cells = m * m;
  std::vector<long> a(cells, 0);
  auto mul = [&](const std::vector<long>& x, const std::vector<long>& y) {
    std::vector<long> z(cells, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        long s = 0;
        for (std::size_t k = 0; k < m; ++k) s += x[i * m + k] * y[k * m + j];
        z[i * m + j] = s % p;
      }
    return z;
  };
  auto bijective = [&](const std::vector<long>& x) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < m; ++i) count *= static_cast<std::size_t>(p);
    std::set<std::vector<long>> images;
    for (std::size_t v = 0; v < count; ++v) {
      std::vector<long> vec(m), img(m, 0);
      for (std::size_t i = 0, t = v; i < m; ++i, t /= static_cast<std::size_t>(p)) vec[i] = static_cast<long>(t % p);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) img[i] = (img[i] + x[i * m + j] * vec[j]) % p;
      images.insert(img);
    }
    return images.size() == count;
  };
  while (true) {
    const auto sq = mul(a, a);
    bool root = true;
    for (std::size_t i = 0; i < m && root; ++i)
      for (std::size_t j = 0; j < m && root; ++j)
        root = ((2 * sq[i * m + j] - 2 * a[i * m + j] + (i == j)) % p + p) % p == 0;
    if (root) roots.push_back(a);
    if (bijective(a)) gl.push_back(a);
    std::size_t i = 0;
    for (; i < cells; ++i) {
      if (++a[i] < p) break;
      a[i] = 0;
    }
    if (i == cells) break;
  }
  std::vector<std::vector<long>> reps;
  for (const auto& r : roots) {
    bool known = false;
    for (const auto& s : reps)
      for (const auto& g : gl)
        if (mul(g, r) == mul(s, g)) {
          known = true;
          break;
        }
    if (!known) reps.push_back(r);
  }
  return reps.size();
}

}  // namespace

TEST_CASE("enumeration counts up to isomorphism") {
  const std::pair<std::size_t, std::size_t> expected[] = {
      {1, 1}, {2, 0}, {3, 0}, {4, 0}, {5, 2}, {6, 0}, {7, 0}, {8, 0}, {9, 1}, {10, 0}, {11, 0}, {12, 0}};
  for (const auto& [n, count] : expected) {
    const auto r = enumerate_quadratical(n);
    CAPTURE(n);
    CHECK(r.complete);
    CHECK(r.representatives.size() == count);
    check_representatives(r);
  }
}

TEST_CASE("order 5 and 9 representatives are the printed ones") {
  const auto r5 = keys(enumerate_quadratical(5).representatives);
  CHECK(r5 == keys({canonical_form(catalog_get("Q1")), canonical_form(catalog_get("Q1_dual"))}));
  const auto r9 = enumerate_quadratical(9).representatives;
  REQUIRE(r9.size() == 1);
  CHECK(r9[0] == canonical_form(catalog_get("Q2")));
}

TEST_CASE("affine classification agrees with backtracking") {
  for (std::size_t n : {1, 5, 9}) {
    const auto a = classify_affine(n), e = enumerate_quadratical(n);
    CHECK(keys(a.representatives) == keys(e.representatives));
    check_representatives(a);
  }
  CHECK_THROWS_AS((void)classify_affine(10), PreconditionError);
  CHECK_THROWS_AS((void)classify_affine(101), PreconditionError);
}

TEST_CASE("affine class counts") {
  const std::pair<std::size_t, std::size_t> expected[] = {
      {3, 0}, {7, 0}, {15, 0}, {17, 2}, {21, 0}, {25, 5}, {29, 2}, {45, 2}, {49, 1}};
  for (const auto& [n, count] : expected) {
    CAPTURE(n);
    const auto r = classify_affine(n);
    CHECK(r.representatives.size() == count);
    check_representatives(r);
  }
  const auto r25 = keys(classify_affine(25).representatives);
  for (const char* name : {"K", "K_dual", "Q1xQ1", "Q1xQ1dual", "Q1dualxQ1dual"}) {
    const Groupoid c = canonical_form(catalog_get(name));
    CHECK_MESSAGE(r25.count({c.cells().begin(), c.cells().end()}) == 1, name);
  }
}

TEST_CASE("order-5 affine roots") {
  // 2a² - 2a + 1 = 0 mod 5 by brute force.
  std::set<long> roots;
  for (long a = 0; a < 5; ++a)
    if ((2 * a * a - 2 * a + 1) % 5 == 0) roots.insert(a);
  CHECK(roots == std::set<long>{2, 4});
  const auto specs = classify_affine_specs(5);
  REQUIRE(specs.size() == 2);
  std::set<long> got;
  for (const auto& s : specs) got.insert(s.spec.phi[0][0]);
  CHECK(got == roots);
}

TEST_CASE("elementary abelian rank formula against brute force") {
  const std::tuple<long, std::size_t, std::size_t> cases[] = {
      {3, 1, 0}, {5, 1, 2}, {3, 2, 1}, {5, 2, 3}, {7, 2, 1}, {3, 3, 0}, {13, 2, 3}};
  for (const auto& [p, m, count] : cases) {
    CAPTURE(p);
    CAPTURE(m);
    CHECK(brute_force_classes(p, m) == count);
    const auto roots = elementary_affine_roots(p, m);
    CHECK(roots.size() == count);
    for (const auto& r : roots) {
      AffineSpec spec{std::vector<std::size_t>(m, static_cast<std::size_t>(p)), {}};
      for (std::size_t i = 0; i < m; ++i) spec.phi.emplace_back(r.begin() + i * m, r.begin() + (i + 1) * m);
      CHECK(affine_spec_valid(spec));
    }
  }
  CHECK(elementary_affine_roots(3, 4).size() == 1);
  CHECK(elementary_affine_roots(5, 4).size() == 5);
}

TEST_CASE("abelian groups") {
  CHECK(abelian_groups(1) == std::vector<std::vector<std::size_t>>{{}});
  CHECK(abelian_groups(45).size() == 2);
  CHECK(abelian_groups(81).size() == 5);
  for (const auto& f : abelian_groups(72)) {
    std::size_t prod = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      prod *= f[i];
      if (i + 1 < f.size()) CHECK(f[i + 1] % f[i] == 0);
    }
    CHECK(prod == 72);
  }
}

TEST_CASE("translatability scans") {
  const std::pair<std::size_t, std::set<std::size_t>> expected[] = {
      {5, {2, 3}}, {9, {}}, {13, {5, 8}}, {17, {4, 13}}, {25, {7, 18}}, {29, {12, 17}}};
  for (const auto& [n, ks] : expected) {
    const auto rep = scan_translatable(n);
    std::set<std::size_t> got;
    for (const auto& h : rep.hits) {
      got.insert(h.k);
      CHECK(is_k_translatable(h.table, h.k));
      CHECK(h.canonical == canonical_form(h.table));
      CHECK(is_quadratical(h.table, QuadraticalMethod::all));
    }
    CHECK_MESSAGE(got == ks, "order " << n);
  }
}

TEST_CASE("detect_translatable") {
  CHECK(detect_translatable(catalog_get("Q1")) == std::vector<std::size_t>{3});
  CHECK(detect_translatable(catalog_get("Q1_dual")) == std::vector<std::size_t>{2});
  CHECK(detect_translatable(catalog_get("Q2")).empty());
  CHECK(detect_translatable(catalog_get("Q4")) == std::vector<std::size_t>{13});
  CHECK(detect_translatable(catalog_get("Q4_dual")) == std::vector<std::size_t>{4});
  CHECK_THROWS_AS((void)detect_translatable(catalog_get("Ex2_2")), PreconditionError);
}

TEST_CASE("detect_translatable matches exhaustive ordering search at order 5") {
  for (const char* name : {"Q1", "Q1_dual", "Ex8_2"})
    CHECK(detect_translatable(catalog_get(name)) == detect_translatable_by_orderings(catalog_get(name)));
  // Every idempotent table of order 5 that is translatable for some k.
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto g = forced_idempotent_translatable(5, k);
    if (!g) continue;
    CHECK(detect_translatable(*g) == detect_translatable_by_orderings(*g));
  }
}

TEST_CASE("duals of translatable hits") {
  // k for a hit and the k of its dual sum to the order at every order tried.
  for (std::size_t n : {5, 13, 17, 25, 29}) {
    for (const auto& h : scan_translatable(n).hits) {
      const auto ks = detect_translatable(dual(h.table));
      CHECK_MESSAGE(ks == std::vector<std::size_t>{n - h.k}, "order " << n << " k " << h.k);
    }
  }
}

TEST_CASE("spectrum") {
  const auto s = spectrum_scan(45);
  REQUIRE(s.size() == 45);
  CHECK(s[1].verdict == SpectrumVerdict::impossible);
  CHECK(s[4].verdict == SpectrumVerdict::exists);
  CHECK(s[20].verdict == SpectrumVerdict::impossible_by_classification);
  CHECK(s[32].verdict == SpectrumVerdict::impossible_by_classification);
  CHECK(s[44].verdict == SpectrumVerdict::exists);
  CHECK(s[44].witness.find("product") != std::string::npos);
  for (const auto& e : s) {
    if (e.order % 4 != 1) CHECK(e.verdict == SpectrumVerdict::impossible);
    CHECK(e.verdict != SpectrumVerdict::unknown);
  }
  CHECK_THROWS_AS((void)spectrum_scan(101), PreconditionError);
}

TEST_CASE("enumeration output files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "quadlab_enum_test";
  fs::remove_all(dir);
  const auto index = write_enumeration(enumerate_quadratical(5), dir.string());
  std::ifstream in(index);
  std::string line;
  std::getline(in, line);
  CHECK(line == "order 5 count 2 representatives: order5_rep1.tbl order5_rep2.tbl");
  const Groupoid g = read_table_file((dir / "order5_rep1.tbl").string());
  CHECK(is_quadratical(g));
  fs::remove_all(dir);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS((void)enumerate_quadratical(17), PreconditionError);
  CHECK_THROWS_AS((void)enumerate_quadratical(18, {100}), PreconditionError);
  const auto r = enumerate_quadratical(17, {0.2});
  CHECK_FALSE(r.complete);
}
