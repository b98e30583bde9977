#include "quadlab/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "quadlab/properties.hpp"
#include "quadlab/propagation.hpp"

namespace quadlab {

double budget_from_env() {
  const char* s = std::getenv("QUADLAB_BUDGET_SECS");
  if (!s) return 0;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  return (end != s && v > 0) ? v : 0;
}

// ---------------------------------------------------------------------------
// Backtracking enumeration
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Element> table_key(const Groupoid& g) { return {g.cells().begin(), g.cells().end()}; }

class Enumerator {
 public:
  Enumerator(std::size_t n, double budget, EnumerationResult& out)
      : n_(n), out_(out), table_(n, true, true) {
    auto id = [](const char* name, const char* eq) {
      return std::make_shared<IdentityRule>(Identity::parse(name, eq));
    };
    prop_.add(std::make_shared<LatinRule>());
    prop_.add(id("bookend", "(y*x)*(x*y) = x"));
    prop_.add(id("medial", "(x*y)*(z*w) = (x*z)*(y*w)"));
    for (Element r = 0; r < n; ++r)
      for (Element c = 0; c < n; ++c)
        if (r != c) order_.push_back({r, c});
    if (budget > 0)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(budget));
  }

  void run() {
    for (Element x = 0; x < n_; ++x) table_.set(x, x, x);
    dfs();
    for (auto& [key, g] : found_) out_.representatives.push_back(std::move(g));
  }

 private:
  void dfs() {
    if (!out_.complete) return;
    if (deadline_ && Clock::now() > *deadline_) {
      out_.complete = false;
      return;
    }
    const auto mark = table_.mark();
    if (prop_.run(table_)) {
      table_.undo(mark);
      return;
    }
    const Cell* next = nullptr;
    for (const Cell& c : order_)
      if (!table_.known(c.row, c.col)) {
        next = &c;
        break;
      }
    if (!next) {
      leaf();
    } else {
      // Elements above `limit` are still interchangeable: trying one of them
      // stands for all.
      const int limit = std::min<int>(static_cast<int>(n_) - 1, appeared(*next) + 1);
      const auto domain = table_.domain(next->row, next->col);
      for (int v = 0; v <= limit && out_.complete; ++v) {
        if (!(domain >> v & 1)) continue;
        const auto inner = table_.mark();
        table_.set(next->row, next->col, static_cast<Element>(v));
        dfs();
        table_.undo(inner);
      }
    }
    table_.undo(mark);
  }

  int appeared(Cell at) const {
    int m = std::max(at.row, at.col);
    for (Element r = 0; r < n_; ++r)
      for (Element c = 0; c < n_; ++c)
        if (r != c && table_.known(r, c))
          m = std::max({m, static_cast<int>(r), static_cast<int>(c), table_.get(r, c)});
    return m;
  }

  void leaf() {
    ++out_.raw_count;
    const Groupoid g = table_.to_groupoid();
    if (!is_quadratical(g)) return;
    Groupoid c = canonical_form(g);
    auto key = table_key(c);
    found_.emplace(std::move(key), std::move(c));
  }

  std::size_t n_;
  EnumerationResult& out_;
  PartialTable table_;
  Propagator prop_;
  std::vector<Cell> order_;
  std::optional<Clock::time_point> deadline_;
  std::map<std::vector<Element>, Groupoid> found_;
};

}  // namespace

EnumerationResult enumerate_quadratical(std::size_t n, const SearchOptions& opt) {
  if (n == 0) throw PreconditionError("order must be positive");
  if (n > 17) throw PreconditionError("backtracking enumeration is limited to order 17");
  if (n > 13 && opt.budget_secs <= 0)
    throw PreconditionError("orders above 13 need a time budget (QUADLAB_BUDGET_SECS)");
  EnumerationResult out;
  out.order = n;
  Enumerator(n, opt.budget_secs, out).run();
  return out;
}

// ---------------------------------------------------------------------------
// Affine classification
// ---------------------------------------------------------------------------

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

std::vector<std::pair<long, int>> factorize(std::size_t n) {
  std::vector<std::pair<long, int>> out;
  long m = static_cast<long>(n);
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Endomorphisms of Z_{p^a1} × … × Z_{p^am} as m×m matrices, row i taken
// mod p^ai.
struct PGroup {
  long p;
  std::vector<int> exps;
  std::vector<long> mods;

  PGroup(long p_, std::vector<int> e) : p(p_), exps(std::move(e)) {
    for (int a : exps) mods.push_back(ipow(p, a));
  }
  [[nodiscard]] std::size_t rank() const { return exps.size(); }

  using Mat = std::vector<long>;

  [[nodiscard]] Mat mul(const Mat& a, const Mat& b) const {
    const std::size_t m = rank();
    Mat c(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        long acc = 0;
        for (std::size_t k = 0; k < m; ++k) acc += a[i * m + k] * b[k * m + j];
        c[i * m + j] = mod(acc, mods[i]);
      }
    return c;
  }

  // 2φ² - 2φ + 1 = 0.
  [[nodiscard]] bool is_root(const Mat& phi) const {
    const std::size_t m = rank();
    const Mat sq = mul(phi, phi);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (mod(2 * sq[i * m + j] - 2 * phi[i * m + j] + (i == j), mods[i]) != 0) return false;
    return true;
  }

  // An endomorphism of a p-group is invertible iff it is invertible on G/pG.
  [[nodiscard]] bool invertible(const Mat& a) const {
    const std::size_t m = rank();
    std::vector<long> r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(a[i], p);
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      while (piv < m && r[piv * m + col] == 0) ++piv;
      if (piv == m) return false;
      for (std::size_t j = 0; j < m; ++j) std::swap(r[col * m + j], r[piv * m + j]);
      long inv = 1;
      while (mod(inv * r[col * m + col], p) != 1) ++inv;
      for (std::size_t i = col + 1; i < m; ++i) {
        const long f = mod(r[i * m + col] * inv, p);
        for (std::size_t j = 0; j < m; ++j) r[i * m + j] = mod(r[i * m + j] - f * r[col * m + j], p);
      }
    }
    return true;
  }

  // Number of endomorphisms.
  [[nodiscard]] double end_count() const {
    double c = 1;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) c *= static_cast<double>(mods[i] / step(i, j));
    return c;
  }

  [[nodiscard]] long step(std::size_t i, std::size_t j) const {
    return ipow(p, std::max(0, exps[i] - exps[j]));
  }

  template <class F>
  void for_each_end(F&& f) const {
    const std::size_t m = rank();
    Mat a(m * m, 0);
    while (true) {
      f(a);
      std::size_t k = 0;
      for (; k < m * m; ++k) {
        const std::size_t i = k / m, j = k % m;
        a[k] += step(i, j);
        if (a[k] < mods[i]) break;
        a[k] = 0;
      }
      if (k == m * m) return;
    }
  }
};

constexpr double kMaxEndomorphisms = 4e6;

std::vector<long> roots_mod(long p) {
  std::vector<long> out;
  for (long x = 0; x < p; ++x)
    if (mod(2 * x * x - 2 * x + 1, p) == 0) out.push_back(x);
  return out;
}

// Conjugacy classes of roots on an elementary abelian group too large to
// scan: diagonal classes when the polynomial splits mod p, block-diagonal
// copies of one 2×2 root when it does not.
std::vector<PGroup::Mat> elementary_classes(const PGroup& g) {
  const std::size_t m = g.rank();
  const long p = g.p;
  std::vector<PGroup::Mat> out;
  const auto roots = roots_mod(p);
  if (roots.size() == 2) {
    for (std::size_t j = 0; j <= m; ++j) {
      PGroup::Mat a(m * m, 0);
      for (std::size_t i = 0; i < m; ++i) a[i * m + i] = i < j ? roots[0] : roots[1];
      out.push_back(std::move(a));
    }
    return out;
  }
  if (m % 2 == 1) return out;
  const PGroup two(p, {1, 1});
  std::optional<PGroup::Mat> block;
  two.for_each_end([&](const PGroup::Mat& a) {
    if (!block && two.is_root(a)) block = a;
  });
  if (!block) return out;
  PGroup::Mat a(m * m, 0);
  for (std::size_t b = 0; b < m; b += 2)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a[(b + i) * m + b + j] = (*block)[i * 2 + j];
  out.push_back(std::move(a));
  return out;
}

// Roots of 2φ² - 2φ + 1 on one p-group, one per Aut-conjugacy class.
std::vector<PGroup::Mat> root_classes(const PGroup& g) {
  if (g.end_count() > kMaxEndomorphisms) {
    if (std::any_of(g.exps.begin(), g.exps.end(), [](int a) { return a != 1; }))
      throw Error("affine classification: endomorphism space too large");
    return elementary_classes(g);
  }
  std::vector<PGroup::Mat> roots, autos;
  g.for_each_end([&](const PGroup::Mat& a) {
    if (g.is_root(a)) roots.push_back(a);
  });
  if (roots.empty()) return {};
  g.for_each_end([&](const PGroup::Mat& a) {
    if (g.invertible(a)) autos.push_back(a);
  });
  std::vector<PGroup::Mat> reps;
  for (const auto& s : roots) {
    const bool known = std::any_of(reps.begin(), reps.end(), [&](const PGroup::Mat& r) {
      return std::any_of(autos.begin(), autos.end(),
                         [&](const PGroup::Mat& a) { return g.mul(a, r) == g.mul(s, a); });
    });
    if (!known) reps.push_back(s);
  }
  return reps;
}

struct Part {
  std::vector<std::size_t> factors;
  PGroup::Mat phi;  // rank × rank
};

}  // namespace

std::vector<std::vector<long>> elementary_affine_roots(long p, std::size_t m) {
  if (p < 3 || factorize(static_cast<std::size_t>(p)).size() != 1 || factorize(static_cast<std::size_t>(p))[0].second != 1)
    throw PreconditionError("elementary_affine_roots requires an odd prime");
  return elementary_classes(PGroup(p, std::vector<int>(m, 1)));
}

std::vector<std::vector<std::size_t>> abelian_groups(std::size_t n) {
  if (n == 0) throw PreconditionError("order must be positive");
  std::vector<std::vector<std::size_t>> out = {{}};
  for (const auto& [p, e] : factorize(n)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& base : out)
      for (const auto& lambda : parts) {
        // Invariant factors d1 | d2 | …: align the largest parts at the end.
        std::vector<std::size_t> f = base;
        const std::size_t len = std::max(f.size(), lambda.size());
        f.insert(f.begin(), len - f.size(), 1);
        for (std::size_t i = 0; i < lambda.size(); ++i)
          f[len - 1 - i] *= static_cast<std::size_t>(ipow(p, lambda[i]));
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<AffineClass> classify_affine_specs(std::size_t n) {
  if (n == 0 || n > 100) throw PreconditionError("classify_affine requires 1 <= n <= 100");
  if (n % 2 == 0) throw PreconditionError("classify_affine requires odd n");
  // φ preserves each primary component, so a class is a choice of one class
  // per prime.
  std::vector<std::vector<Part>> per_prime;
  for (const auto& [p, e] : factorize(n)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<Part> found;
    for (const auto& lambda : parts) {
      const PGroup g(p, lambda);
      for (auto& phi : root_classes(g)) {
        Part part;
        for (long d : g.mods) part.factors.push_back(static_cast<std::size_t>(d));
        part.phi = std::move(phi);
        found.push_back(std::move(part));
      }
    }
    if (found.empty()) return {};
    per_prime.push_back(std::move(found));
  }

  std::map<std::vector<Element>, AffineClass> classes;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  while (true) {
    AffineSpec spec;
    for (std::size_t i = 0; i < per_prime.size(); ++i)
      for (std::size_t d : per_prime[i][pick[i]].factors) spec.factors.push_back(d);
    const std::size_t m = spec.factors.size();
    spec.phi.assign(m, std::vector<long>(m, 0));
    std::size_t offset = 0;
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
      const Part& part = per_prime[i][pick[i]];
      const std::size_t r = part.factors.size();
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) spec.phi[offset + a][offset + b] = part.phi[a * r + b];
      offset += r;
    }
    Groupoid c = canonical_form(build_affine(spec));
    auto key = table_key(c);
    classes.try_emplace(std::move(key), AffineClass{std::move(spec), std::move(c)});

    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < per_prime[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  std::vector<AffineClass> out;
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

EnumerationResult classify_affine(std::size_t n) {
  EnumerationResult out;
  out.order = n;
  for (auto& cls : classify_affine_specs(n)) out.representatives.push_back(std::move(cls.table));
  out.raw_count = out.representatives.size();
  return out;
}

// ---------------------------------------------------------------------------
// Translatability
// ---------------------------------------------------------------------------

TranslatabilityReport scan_translatable(std::size_t n) {
  if (n == 0) throw PreconditionError("order must be positive");
  TranslatabilityReport out;
  out.order = n;
  for (std::size_t k = 1; k <= n; ++k) {
    auto g = forced_idempotent_translatable(n, k);
    if (!g || !is_quadratical(*g, QuadraticalMethod::all)) continue;
    Groupoid c = canonical_form(*g);
    out.hits.push_back({k, std::move(*g), std::move(c)});
  }
  return out;
}

std::vector<std::size_t> detect_translatable(const Groupoid& g) {
  if (!holds(g, PropertyKind::idempotent)) throw PreconditionError("detect_translatable requires an idempotent groupoid");
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= g.order(); ++k) {
    const auto forced = forced_idempotent_translatable(g.order(), k);
    if (forced && find_isomorphism(g, *forced)) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> detect_translatable_by_orderings(const Groupoid& g) {
  const std::size_t n = g.order();
  if (n > 8) throw PreconditionError("ordering search is limited to order 8");
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::set<std::size_t> ks;
  do {
    const Groupoid h = relabel(g, perm);
    for (std::size_t k = 1; k <= n; ++k)
      if (is_k_translatable(h, k)) ks.insert(k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {ks.begin(), ks.end()};
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

std::string_view to_string(SpectrumVerdict v) noexcept {
  switch (v) {
    case SpectrumVerdict::impossible: return "impossible";
    case SpectrumVerdict::impossible_by_classification: return "impossible-by-classification";
    case SpectrumVerdict::exists: return "exists";
    case SpectrumVerdict::unknown: return "unknown";
  }
  return "?";
}

std::vector<SpectrumEntry> spectrum_scan(std::size_t n_max) {
  if (n_max > 100) throw PreconditionError("spectrum_scan requires n_max <= 100");
  std::vector<SpectrumEntry> out;
  std::vector<char> exists(n_max + 1, 0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    SpectrumEntry e{n, SpectrumVerdict::unknown, {}};
    if (n == 1) {
      e = {n, SpectrumVerdict::exists, "trivial quasigroup"};
    } else if (n % 4 != 1) {
      e = {n, SpectrumVerdict::impossible, "order is not 1 mod 4"};
    } else {
      for (std::size_t a = 5; a * a <= n && e.verdict == SpectrumVerdict::unknown; ++a)
        if (n % a == 0 && exists[a] && exists[n / a])
          e = {n, SpectrumVerdict::exists,
               "direct product of orders " + std::to_string(a) + " and " + std::to_string(n / a)};
      for (std::size_t k = 2; k <= n && e.verdict == SpectrumVerdict::unknown; ++k) {
        const auto g = forced_idempotent_translatable(n, k);
        if (g && is_quadratical(*g))
          e = {n, SpectrumVerdict::exists, std::to_string(k) + "-translatable table"};
      }
      if (e.verdict == SpectrumVerdict::unknown) {
        const auto classes = classify_affine_specs(n);
        if (classes.empty()) {
          e = {n, SpectrumVerdict::impossible_by_classification, "no affine representative"};
        } else {
          std::string group;
          for (std::size_t d : classes.front().spec.factors)
            group += (group.empty() ? "Z" : " x Z") + std::to_string(d);
          e = {n, SpectrumVerdict::exists, "affine over " + group};
        }
      }
    }
    exists[n] = e.verdict == SpectrumVerdict::exists;
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string write_enumeration(const EnumerationResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string stem = "order" + std::to_string(result.order);
  std::string files;
  for (std::size_t i = 0; i < result.representatives.size(); ++i) {
    const std::string name = stem + "_rep" + std::to_string(i + 1) + ".tbl";
    write_table_file(result.representatives[i], (fs::path(dir) / name).string());
    files += " " + name;
  }
  const std::string index = (fs::path(dir) / (stem + "_index.txt")).string();
  std::ofstream out(index);
  if (!out) throw Error("cannot write " + index);
  out << "order " << result.order << " count " << result.representatives.size()
      << " representatives:" << files << '\n';
  if (!result.complete) out << "partial: time budget exceeded\n";
  return index;
}

}  // namespace quadlab
