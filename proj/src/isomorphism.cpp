#include "quadlab/groupoid.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace quadlab {

Isomorphism Isomorphism::inverse() const {
  Isomorphism inv;
  inv.map.resize(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) inv.map[map[x]] = static_cast<Element>(x);
  return inv;
}

Isomorphism Isomorphism::then(const Isomorphism& other) const {
  Isomorphism out;
  out.map.resize(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) out.map[x] = other.map[map[x]];
  return out;
}

bool is_isomorphism(const Groupoid& g, const Groupoid& h, const Isomorphism& iso) {
  const auto n = g.order();
  if (h.order() != n || iso.map.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Element v : iso.map) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (iso.map[g(x, y)] != h(iso.map[x], iso.map[y])) return false;
  return true;
}

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

// Relabeling-invariant per-element data used to discard hopeless images.
using Signature = std::array<std::uint32_t, 4>;

std::vector<Signature> signatures(const Groupoid& g) {
  const auto n = g.order();
  std::vector<Signature> sig(n, Signature{});
  for (Element x = 0; x < n; ++x) {
    sig[x][0] = g(x, x) == x;
    for (Element y = 0; y < n; ++y) {
      sig[x][1] += g(x, y) == x;
      sig[x][2] += g(y, x) == x;
      sig[x][3] += g(x, y) == y;
    }
  }
  return sig;
}

// Backtracking over partial bijections. Fixing the image of one element
// forces the images of every product of already-mapped elements.
class IsoSearch {
 public:
  IsoSearch(const Groupoid& g, const Groupoid& h)
      : g_(g), h_(h), n_(g.order()), map_(n_, kUnset), inv_(n_, kUnset),
        sig_g_(signatures(g)), sig_h_(signatures(h)) {}

  bool signatures_compatible() const {
    auto a = sig_g_, b = sig_h_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  template <class Visit>
  bool run(Visit&& visit) {
    return dfs(visit);
  }

 private:
  template <class Visit>
  bool dfs(Visit& visit) {
    Element x = kUnset;
    for (Element e = 0; e < n_; ++e) {
      if (map_[e] == kUnset) {
        x = e;
        break;
      }
    }
    if (x == kUnset) return visit(map_);
    for (Element y = 0; y < n_; ++y) {
      if (inv_[y] != kUnset || sig_g_[x] != sig_h_[y]) continue;
      const auto mark = trail_.size();
      if (assign(x, y) && dfs(visit)) return true;
      undo(mark);
    }
    return false;
  }

  bool set(Element x, Element y) {
    if (inv_[y] != kUnset || sig_g_[x] != sig_h_[y]) return false;
    map_[x] = y;
    inv_[y] = x;
    trail_.push_back(x);
    return true;
  }

  bool assign(Element x, Element y) {
    if (!set(x, y)) return false;
    // trail_ doubles as the list of mapped elements, in assignment order.
    for (std::size_t qi = trail_.size() - 1; qi < trail_.size(); ++qi) {
      const Element p = trail_[qi];
      for (std::size_t j = 0; j <= qi; ++j) {
        const Element q = trail_[j];
        for (int side = 0; side < 2; ++side) {
          const Element a = side ? q : p, b = side ? p : q;
          const Element r = g_(a, b);
          const Element s = h_(map_[a], map_[b]);
          if (map_[r] == kUnset) {
            if (!set(r, s)) return false;
          } else if (map_[r] != s) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Element x = trail_.back();
      trail_.pop_back();
      inv_[map_[x]] = kUnset;
      map_[x] = kUnset;
    }
  }

  const Groupoid& g_;
  const Groupoid& h_;
  std::size_t n_;
  std::vector<Element> map_, inv_;
  std::vector<Element> trail_;
  std::vector<Signature> sig_g_, sig_h_;
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Groupoid& g, const Groupoid& h) {
  if (g.order() != h.order()) return std::nullopt;
  IsoSearch search(g, h);
  if (!search.signatures_compatible()) return std::nullopt;
  std::optional<Isomorphism> found;
  search.run([&](const std::vector<Element>& map) {
    found = Isomorphism{map};
    return true;
  });
  return found;
}

std::vector<Isomorphism> automorphisms(const Groupoid& g) {
  std::vector<Isomorphism> out;
  IsoSearch search(g, g);
  search.run([&](const std::vector<Element>& map) {
    out.push_back(Isomorphism{map});
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form
//
// Candidates are the relabelings induced by ordered generating tuples of
// minimum size k: the tuple gets labels 0..k-1 and every other element is
// labelled in the order the closure first produces it. That candidate set is
// mapped onto itself by any isomorphism, so the lexicographically least
// relabeled table is a complete invariant.
// ---------------------------------------------------------------------------

namespace {

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Groupoid& g)
      : g_(g), n_(g.order()), label_(n_), order_(), cand_(n_ * n_), best_(), best_map_() {}

  Isomorphism run() {
    if (n_ == 1) return Isomorphism{{0}};
    std::vector<Element> tuple;
    for (std::size_t k = 1; k <= n_ && best_.empty(); ++k) {
      tuple.clear();
      std::vector<char> used(n_, 0);
      extend(tuple, used, k);
    }
    return Isomorphism{best_map_};
  }

 private:
  void extend(std::vector<Element>& tuple, std::vector<char>& used, std::size_t k) {
    if (tuple.size() == k) {
      consider(tuple);
      return;
    }
    for (Element e = 0; e < n_; ++e) {
      if (used[e]) continue;
      used[e] = 1;
      tuple.push_back(e);
      extend(tuple, used, k);
      tuple.pop_back();
      used[e] = 0;
    }
  }

  void consider(const std::vector<Element>& tuple) {
    std::fill(label_.begin(), label_.end(), kUnset);
    order_.clear();
    for (Element e : tuple) {
      label_[e] = static_cast<Element>(order_.size());
      order_.push_back(e);
    }
    for (std::size_t idx = 0; idx < order_.size(); ++idx) {
      for (std::size_t j = 0; j <= idx; ++j) {
        const Element a = order_[idx], b = order_[j];
        for (Element v : {g_(a, b), g_(b, a)}) {
          if (label_[v] == kUnset) {
            label_[v] = static_cast<Element>(order_.size());
            order_.push_back(v);
          }
        }
      }
    }
    if (order_.size() != n_) return;

    // Build the relabeled table row by row, stopping as soon as it loses.
    bool smaller = best_.empty();
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Element v = label_[g_(order_[i], order_[j])];
        const std::size_t pos = i * n_ + j;
        cand_[pos] = v;
        if (!smaller) {
          if (v > best_[pos]) return;
          if (v < best_[pos]) smaller = true;
        }
      }
    }
    if (!smaller) return;
    best_ = cand_;
    best_map_ = label_;
  }

  const Groupoid& g_;
  std::size_t n_;
  std::vector<Element> label_;
  std::vector<Element> order_;
  std::vector<Element> cand_;
  std::vector<Element> best_;
  std::vector<Element> best_map_;
};

}  // namespace

Isomorphism canonical_labeling(const Groupoid& g) { return CanonicalSearch(g).run(); }

Groupoid canonical_form(const Groupoid& g) {
  const auto lab = canonical_labeling(g);
  return relabel(g.without_names(), lab.map);
}

}  // namespace quadlab
