// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadlab/catalog.hpp"
#include "quadlab/construct.hpp"
#include "quadlab/properties.hpp"
#include "quadlab/search.hpp"
#include "quadlab/structure.hpp"

using namespace quadlab;
using P = PropertyKind;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures of one criterion.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

const char* kMain[] = {"Q1", "Q1_dual", "Q2", "Q3", "Q3_dual", "Q4", "Q4_dual", "K", "K_dual", "G29", "G29_dual"};

const P kSuite[] = {P::idempotent,  P::elastic,  P::strongly_elastic,  P::bookend,
                    P::left_distributive, P::right_distributive, P::medial, P::identity8,
                    P::identity9,   P::alterable, P::property_A, P::nowhere_commutative,
                    P::left_simple, P::right_simple};

void suite(Checker& c, const Groupoid& g, const std::string& label) {
  for (P p : kSuite) c.expect(holds(g, p).holds, label + " fails " + std::string(to_string(p)));
}

std::set<std::vector<Element>> keys(const std::vector<Groupoid>& gs) {
  std::set<std::vector<Element>> out;
  for (const auto& g : gs) out.insert({g.cells().begin(), g.cells().end()});
  return out;
}

void criterion1(Checker& c, double& secs) {
  const auto t0 = Clock::now();
  for (const char* name : kMain) suite(c, catalog_get(name), name);
  secs = seconds_since(t0);
  c.expect(secs < 5, "identity suite took over 5 s");
}

void criterion2(Checker& c, double& secs) {
  const std::pair<std::size_t, std::size_t> expected[] = {
      {2, 0}, {3, 0}, {4, 0}, {5, 2}, {6, 0}, {7, 0}, {8, 0}, {9, 1}, {10, 0}, {11, 0}, {12, 0}};
  for (const auto& [n, count] : expected) {
    const auto r = enumerate_quadratical(n);
    c.expect(r.complete && r.representatives.size() == count,
             "order " + std::to_string(n) + ": " + std::to_string(r.representatives.size()) + " representatives");
  }
  const auto t0 = Clock::now();
  const auto r13 = enumerate_quadratical(13);
  secs = seconds_since(t0);
  c.expect(r13.complete && r13.representatives.size() == 2,
           "order 13: " + std::to_string(r13.representatives.size()) + " representatives");
  c.expect(secs < 60, "order 13 enumeration took over 60 s");
  c.expect(classify_affine(17).representatives.size() == 2, "affine classes at 17 != 2");
  c.expect(classify_affine(21).representatives.empty(), "affine classes at 21 != 0");
  for (std::size_t n : {1, 5, 9}) {
    c.expect(keys(classify_affine(n).representatives) == keys(enumerate_quadratical(n).representatives),
             "affine and backtracking disagree at " + std::to_string(n));
  }
  c.expect(keys(classify_affine(13).representatives) == keys(r13.representatives),
           "affine and backtracking disagree at 13");
}

bool terminates_in_contradiction(Checker& c, std::size_t n, int b) {
  const auto t0 = Clock::now();
  const auto r = complete_form_Qn({n, b}, {});
  const std::string label = "Q" + std::to_string(n) + " n" + std::to_string(b);
  c.expect(seconds_since(t0) < 10, label + " took over 10 s");
  if (const auto bad = replay_completion(r)) c.expect(false, label + " trace does not replay: " + *bad);
  return r.contradiction();
}

void criterion3(Checker& c, double& secs) {
  const auto t0 = Clock::now();
  const auto q2 = complete_form_Qn({2, 2}, {});
  c.expect(q2.table && *q2.table == catalog_get("Q2"), "Q2 n2 does not reproduce the printed table");
  c.expect(!replay_completion(q2), "Q2 n2 trace does not replay");
  for (int b : {1, 3, 4}) c.expect(terminates_in_contradiction(c, 2, b), "Q2 n" + std::to_string(b) + " completes");
  for (int b : {1, 2, 3, 4}) c.expect(terminates_in_contradiction(c, 6, b), "Q6 n" + std::to_string(b) + " completes");
  for (int b : {3, 4}) c.expect(terminates_in_contradiction(c, 3, b), "Q3 n" + std::to_string(b) + " completes");
  secs = seconds_since(t0);
}

void criterion4(Checker& c, double& secs) {
  const std::pair<std::size_t, std::set<std::size_t>> expected[] = {
      {5, {2, 3}}, {9, {}}, {13, {5, 8}}, {17, {4, 13}}, {25, {7, 18}}, {29, {12, 17}}};
  const auto t0 = Clock::now();
  std::vector<TranslatabilityReport> reports;
  for (const auto& e : expected) reports.push_back(scan_translatable(e.first));
  secs = seconds_since(t0);
  c.expect(secs < 10, "scans took over 10 s");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::set<std::size_t> got;
    for (const auto& h : reports[i].hits) {
      got.insert(h.k);
      suite(c, h.table, "order " + std::to_string(expected[i].first) + " k=" + std::to_string(h.k));
    }
    c.expect(got == expected[i].second, "hit set differs at order " + std::to_string(expected[i].first));
    if (expected[i].first == 25)
      for (std::size_t k = 2; k <= 6; ++k) c.expect(!got.count(k), "order 25 hit at k=" + std::to_string(k));
  }
  // Which of the two hits is the dual: Q1 is 3-translatable, its dual 2-translatable.
  c.expect(detect_translatable(catalog_get("Q1")) == std::vector<std::size_t>{3}, "Q1 is not 3-translatable");
  c.expect(detect_translatable(catalog_get("Q1_dual")) == std::vector<std::size_t>{2},
           "Q1 dual is not 2-translatable");
}

void criterion5(Checker& c, double& secs) {
  const auto t0 = Clock::now();
  for (const auto& e : catalog()) {
    const Groupoid& g = catalog_get(e.name);
    if (!is_quadratical(g)) continue;
    for (Element base = 0; base < g.order(); ++base) {
      const auto d = cycle_decomposition(g, base);
      std::set<Element> seen = {base};
      for (const auto& cyc : d.cycles) seen.insert(cyc.members.begin(), cyc.members.end());
      c.expect(d.cycles.size() == (g.order() - 1) / 4 && seen.size() == g.order(),
               e.name + " base " + g.name(base) + " is not partitioned");
    }
  }
  const Groupoid& p = catalog_get("Q1xQ1");
  std::set<std::set<std::string>> got;
  for (const auto& cyc : cycle_decomposition(p, *p.find("(a,b)")).cycles) {
    std::set<std::string> s;
    for (Element x : cyc.members) s.insert(p.name(x));
    got.insert(s);
  }
  const std::set<std::set<std::string>> want = {
      {"(a,a)", "(a,aba)", "(a,ab)", "(a,ba)"},   {"(b,ab)", "(aba,ba)", "(ba,a)", "(ab,aba)"},
      {"(ab,b)", "(b,b)", "(aba,b)", "(ba,b)"},   {"(ab,ab)", "(b,ba)", "(aba,a)", "(ba,aba)"},
      {"(ba,ba)", "(ab,a)", "(b,aba)", "(aba,ab)"}, {"(aba,aba)", "(ba,ab)", "(ab,ba)", "(b,a)"}};
  c.expect(got == want, "Q1xQ1 cycles on (a,b) differ from the six printed sets");
  const std::pair<const char*, std::size_t> forms[] = {{"Q1", 1}, {"Q2", 2}, {"Q3", 3}, {"Q4", 4}, {"G29", 7}};
  for (const auto& [name, n] : forms) {
    const auto f = detect_form_Qn(catalog_get(name));
    c.expect(f && f->n == n, std::string(name) + " form depth differs");
  }
  for (const char* name : {"K", "Q1xQ1", "Q1xQ1dual", "Q1dualxQ1", "Q1dualxQ1dual"})
    c.expect(!detect_form_Qn(catalog_get(name)), std::string(name) + " has a form");
  secs = seconds_since(t0);
}

void criterion6(Checker& c, double& secs) {
  const auto t0 = Clock::now();
  c.expect(find_isomorphism(catalog_get("Q2"), dual(catalog_get("Q2"))).has_value(), "Q2 is not self-dual");
  for (const char* name : {"Q1", "Q3", "Q4", "K", "G29"})
    c.expect(!find_isomorphism(catalog_get(name), dual(catalog_get(name))), std::string(name) + " is self-dual");
  for (int i = 1; i <= 6; ++i) {
    const std::string name = "Dudek9_" + std::to_string(i);
    c.expect(find_isomorphism(catalog_get(name), catalog_get("Q2")).has_value(), name + " is not isomorphic to Q2");
    for (int j = i + 1; j <= 6; ++j)
      c.expect(find_isomorphism(catalog_get(name), catalog_get("Dudek9_" + std::to_string(j))).has_value(),
               name + " vs Dudek9_" + std::to_string(j));
  }
  for (const char* name : {"Q1xQ1", "Q1xQ1dual", "Q1dualxQ1", "Q1dualxQ1dual"})
    c.expect(!find_isomorphism(catalog_get("K"), catalog_get(name)), std::string("K is isomorphic to ") + name);
  secs = seconds_since(t0);
}

void criterion7(Checker& c, double& secs) {
  struct Implication {
    const char* label;
    std::vector<P> hyps, concl;
  };
  const std::vector<Implication> implications = {
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
  const auto t0 = Clock::now();
  for (const auto& t : implications) {
    const auto v = check_implication(t.hyps, t.concl, 4);
    c.expect(!v.counterexample_found && v.max_order == 4, t.label + std::string(" has a counterexample"));
  }
  for (P concl : {P::idempotent, P::elastic, P::medial}) {
    const P hyp[] = {P::bookend};
    const P con[] = {concl};
    const auto v = check_implication(hyp, con, 4);
    c.expect(v.counterexample && holds(*v.counterexample, P::bookend) && !holds(*v.counterexample, concl),
             std::string("no bookend counterexample for ") + std::string(to_string(concl)));
    const Groupoid& ex = catalog_get("Ex2_2");
    c.expect(holds(ex, P::bookend) && !holds(ex, concl), "the 4-element bookend example satisfies " + std::string(to_string(concl)));
  }
  secs = seconds_since(t0);
  c.expect(secs < 120, "implication sweeps took over 120 s");
}

void criterion8(Checker& c, double& secs) {
  const auto t0 = Clock::now();
  std::mt19937 rng(2024);
  auto random_table = [&](std::size_t n) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(n) - 1);
    std::vector<Element> t(n * n);
    for (auto& v : t) v = static_cast<Element>(d(rng));
    return Groupoid(n, std::move(t));
  };
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 7;
    const Groupoid g = random_table(n);
    c.expect(same_table(dual(dual(g)), g), "dual is not an involution");
    c.expect(parse_table(serialize_table(g)) == g, "serialization does not round trip");
    const Groupoid cf = canonical_form(g);
    c.expect(canonical_form(cf) == cf, "canonical form is not idempotent");
    std::vector<Element> a = {static_cast<Element>(i % n)}, b = a;
    b.push_back(static_cast<Element>(rng() % n));
    const auto ca = generated_subgroupoid(g, a), cb = generated_subgroupoid(g, b);
    c.expect(std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()), "closure is not monotone");
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (int b = 1; b <= 4; ++b) {
      CompletionOptions rev;
      rev.reverse_rules = true;
      const auto f = complete_form_Qn({n, b}, {}), r = complete_form_Qn({n, b}, rev);
      c.expect(f.contradiction() == r.contradiction() && f.solutions == r.solutions &&
                   (!f.table || !r.table || *f.table == *r.table),
               "completion is not confluent at Q" + std::to_string(n) + " n" + std::to_string(b));
    }
  // Forced-row oracle: count first rows whose rotations give an idempotent table.
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t count = 0;
      std::vector<Element> x(n, 0), row(n), next(n);
      while (true) {
        row = x;
        bool ok = row[0] == 0;
        for (std::size_t q = 1; q < n && ok; ++q) {
          for (std::size_t j = 0; j < n; ++j) next[(j + k) % n] = row[j];
          row.swap(next);
          ok = row[q] == q;
        }
        count += ok;
        std::size_t i = 0;
        for (; i < n; ++i) {
          if (++x[i] < n) break;
          x[i] = 0;
        }
        if (i == n) break;
      }
      const auto forced = forced_idempotent_translatable(n, k);
      c.expect(count == (forced ? 1u : 0u) && forced.has_value() == (std::gcd(k - 1, n) == 1),
               "forced row is not unique at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  for (const auto& [name, depth] : {std::pair{"Q3", 3}, std::pair{"Q4", 4}}) {
    const Groupoid& g = catalog_get(name);
    const Element a = *g.find("a"), b = *g.find("b");
    const auto plain = h_family(g, a, b, depth).levels;
    const auto star = star_elements(g, a, b, depth);
    for (int l = 1; l <= depth; ++l)
      for (int k = 1; k <= 4; ++k)
        c.expect(star[l - 1][k - 1] == plain[l - 1][star_position(l, k) - 1],
                 std::string(name) + " star element " + std::to_string(l) + std::to_string(k));
  }
  secs = seconds_since(t0);
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Checker&, double&)>> criteria[] = {
      {"identity suite", criterion1},      {"counts up to isomorphism", criterion2},
      {"completion engine", criterion3},   {"translatability", criterion4},
      {"structure", criterion5},           {"duality and isomorphism", criterion6},
      {"implication lattice", criterion7}, {"property suites", criterion8}};
  int failed = 0, index = 0;
  for (const auto& [label, run] : criteria) {
    ++index;
    Checker c;
    double secs = 0;
    try {
      run(c, secs);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << index << " (" << label
         << ") " << secs << " s";
    std::cout << line.str() << '\n';
    for (const auto& f : c.failures) std::cout << "    " << f << '\n';
    failed += !c.failures.empty();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? 1 : 0;
}
