#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Finite digraphs over dense integer vertex ids. The arc u -> v encodes the
// comparability u >= v, so posets are reflexive transitive antisymmetric
// digraphs and downsets are the sets closed under out-arcs.

namespace latrep {

// Inputs outside an operation's domain (bad ids, sizes over the resource
// guards, values that cannot be represented).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition stated by the caller does not hold (non-preorder input to
// condensation, a "sublattice" that is not min/max closed, ...).
struct contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A property the implementation itself guarantees failed to verify.
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Dynamic bitset sized at construction. Rows of adjacency matrices and
// element sets of lattices; everything in this library is small enough that
// word-parallel scans are instant.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int universe() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  // Ascending list of set bits.
  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

constexpr int kMaxVertices = 4096;

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
      throw domain_error("digraph: vertex count out of range: " +
                         std::to_string(n));
    out_.assign(n, Bits(n));
  }

  int size() const { return n_; }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw domain_error("digraph: invalid vertex id " + std::to_string(v));
  }

  bool has_arc(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return out_[u].test(v);
  }
  void add_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    out_[u].set(v);
  }
  void remove_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    out_[u].reset(v);
  }

  const Bits& out(int u) const { return out_[u]; }

  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> a;
    for (int u = 0; u < n_; ++u)
      for (int v : out_[u].to_vector()) a.emplace_back(u, v);
    return a;
  }
  int arc_count() const {
    int c = 0;
    for (int u = 0; u < n_; ++u) c += out_[u].count();
    return c;
  }

  bool is_reflexive() const {
    for (int u = 0; u < n_; ++u)
      if (!out_[u].test(u)) return false;
    return true;
  }
  bool is_transitive() const {
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (u != v && out_[u].test(v) && !out_[v].subset_of(out_[u]))
          return false;
    return true;
  }
  bool is_antisymmetric() const {
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (out_[u].test(v) && out_[v].test(u)) return false;
    return true;
  }

  Digraph reflexive_closure() const {
    Digraph g = *this;
    for (int u = 0; u < n_; ++u) g.out_[u].set(u);
    return g;
  }
  Digraph strip_loops() const {
    Digraph g = *this;
    for (int u = 0; u < n_; ++u) g.out_[u].reset(u);
    return g;
  }
  Digraph induced(const std::vector<int>& keep) const {
    Digraph g(static_cast<int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b)
        if (out_[keep[a]].test(keep[b]))
          g.add_arc(static_cast<int>(a), static_cast<int>(b));
    return g;
  }

  bool operator==(const Digraph& o) const {
    return n_ == o.n_ && out_ == o.out_;
  }

 private:
  int n_ = 0;
  std::vector<Bits> out_;
};

// Minimal transitive supergraph on the same vertex set; idempotent.
inline Digraph transitive_closure(const Digraph& d) {
  Digraph g = d;
  const int n = d.size();
  for (int k = 0; k < n; ++k)
    for (int u = 0; u < n; ++u)
      if (g.has_arc(u, k)) {
        Bits row = g.out(u) | g.out(k);
        for (int v : row.to_vector())
          if (!g.has_arc(u, v)) g.add_arc(u, v);
      }
  return g;
}

// Relation "there is a directed path from u to v with at least one arc".
// Loops count; the empty path does not. Invariant under transitive closure.
inline Digraph nontrivial_reach(const Digraph& d) {
  // One arc followed by any walk: closure restricted to walks of length >= 1.
  Digraph r = d;
  const int n = d.size();
  for (int k = 0; k < n; ++k)
    for (int u = 0; u < n; ++u)
      if (r.has_arc(u, k))
        for (int v : r.out(k).to_vector())
          if (!r.has_arc(u, v)) r.add_arc(u, v);
  return r;
}

inline bool reachable(const Digraph& d, int u, int v, bool require_nontrivial) {
  d.check_vertex(u);
  d.check_vertex(v);
  if (!require_nontrivial && u == v) return true;
  return nontrivial_reach(d).has_arc(u, v);
}

// Acyclic tolerates loops; strongly acyclic rejects every directed cycle.
inline bool is_strongly_acyclic(const Digraph& d) {
  Digraph r = nontrivial_reach(d);
  for (int u = 0; u < d.size(); ++u)
    if (r.has_arc(u, u)) return false;
  return true;
}
inline bool is_acyclic(const Digraph& d) {
  Digraph r = nontrivial_reach(d);
  for (int u = 0; u < d.size(); ++u)
    for (int v = u + 1; v < d.size(); ++v)
      if (r.has_arc(u, v) && r.has_arc(v, u)) return false;
  return true;
}

// A validated finite poset: reflexive, transitive, antisymmetric carrier.
class Poset {
 public:
  Poset() : carrier_(0) {}
  explicit Poset(Digraph d) : carrier_(std::move(d)) {
    if (!carrier_.is_reflexive())
      throw contract_error("poset: relation is not reflexive");
    if (!carrier_.is_transitive())
      throw contract_error("poset: relation is not transitive");
    if (!carrier_.is_antisymmetric())
      throw contract_error("poset: relation has a 2-cycle");
  }

  int size() const { return carrier_.size(); }
  const Digraph& carrier() const { return carrier_; }
  bool geq(int a, int b) const { return carrier_.has_arc(a, b); }
  bool leq(int a, int b) const { return carrier_.has_arc(b, a); }
  const Bits& down(int a) const { return carrier_.out(a); }

  // a covers b: a > b with nothing strictly between.
  bool covers(int a, int b) const {
    if (a == b || !geq(a, b)) return false;
    for (int z = 0; z < size(); ++z)
      if (z != a && z != b && geq(a, z) && geq(z, b)) return false;
    return true;
  }
  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (covers(a, b)) out.emplace_back(a, b);
    return out;
  }

  // Vertices listed so that smaller elements come first; ties by id.
  std::vector<int> linear_extension() const {
    const int n = size();
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    for (int step = 0; step < n; ++step) {
      for (int v = 0; v < n; ++v) {
        if (placed[v]) continue;
        bool minimal = true;
        for (int u = 0; u < n; ++u)
          if (!placed[u] && u != v && geq(v, u)) {
            minimal = false;
            break;
          }
        if (minimal) {
          order.push_back(v);
          placed[v] = true;
          break;
        }
      }
    }
    return order;
  }

  bool operator==(const Poset& o) const { return carrier_ == o.carrier_; }

 private:
  Digraph carrier_;
};

struct QuotientMap {
  int source_vertex_count = 0;
  std::vector<int> class_of;
  int class_count = 0;
};

// Quotient of a preorder by mutual reachability. Classes are numbered by
// their smallest member, ascending.
inline std::pair<Poset, QuotientMap> condensation(const Digraph& d) {
  if (!d.is_reflexive() || !d.is_transitive())
    throw contract_error("condensation: input is not a preorder");
  const int n = d.size();
  QuotientMap q;
  q.source_vertex_count = n;
  q.class_of.assign(n, -1);
  std::vector<int> reps;
  for (int v = 0; v < n; ++v) {
    if (q.class_of[v] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(v);
    q.class_of[v] = c;
    for (int u = v + 1; u < n; ++u)
      if (q.class_of[u] < 0 && d.has_arc(v, u) && d.has_arc(u, v))
        q.class_of[u] = c;
  }
  q.class_count = static_cast<int>(reps.size());
  Digraph g(q.class_count);
  for (int a = 0; a < q.class_count; ++a)
    for (int b = 0; b < q.class_count; ++b)
      if (d.has_arc(reps[a], reps[b])) g.add_arc(a, b);
  return {Poset(std::move(g)), std::move(q)};
}

// Size of the largest set with no non-trivial internal path (vertices on any
// directed cycle, loops included, are excluded). Exact branch and bound.
inline int width(const Digraph& a) {
  Digraph r = nontrivial_reach(a);
  const int n = a.size();
  std::vector<int> free_ids;
  for (int v = 0; v < n; ++v)
    if (!r.has_arc(v, v)) free_ids.push_back(v);
  // conflict(u,v): some non-trivial path joins u and v in either direction
  const int m = static_cast<int>(free_ids.size());
  std::vector<Bits> conflict(m, Bits(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && (r.has_arc(free_ids[i], free_ids[j]) ||
                     r.has_arc(free_ids[j], free_ids[i])))
        conflict[i].set(j);
  int best = 0;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int from, Bits blocked) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (static_cast<int>(chosen.size()) + (m - from) <= best) return;
    for (int i = from; i < m; ++i) {
      if (blocked.test(i)) continue;
      chosen.push_back(i);
      self(self, i + 1, blocked | conflict[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Bits(m));
  return best;
}

// Width of a poset in the antichain sense: loops are a representation
// artifact, so measure the strict-order digraph.
inline int poset_width(const Poset& p) { return width(p.carrier().strip_loops()); }

// A maximum antichain of the poset, lexicographically least among maximums.
inline std::vector<int> maximum_antichain(const Poset& p) {
  const int n = p.size();
  const int target = poset_width(p);
  std::vector<int> cur;
  std::vector<int> best;
  auto rec = [&](auto&& self, int from) -> bool {
    if (static_cast<int>(cur.size()) == target) {
      best = cur;
      return true;
    }
    if (static_cast<int>(cur.size()) + (n - from) < target) return false;
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : cur)
        if (p.geq(u, v) || p.geq(v, u)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(v);
      if (self(self, v + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return best;
}

// First isomorphism found in canonical search order, if any.
inline std::optional<std::vector<int>> poset_isomorphism(const Poset& p1,
                                                         const Poset& p2) {
  const int n = p1.size();
  if (n != p2.size()) return std::nullopt;

  // invariant profile: (down-set size, up-set size, #lower covers, #upper covers)
  auto profile = [](const Poset& p) {
    std::vector<std::array<int, 4>> prof(p.size());
    auto cov = p.cover_pairs();
    for (int v = 0; v < p.size(); ++v) {
      int downs = p.down(v).count();
      int ups = 0;
      for (int u = 0; u < p.size(); ++u)
        if (p.geq(u, v)) ++ups;
      int lc = 0, uc = 0;
      for (auto& [a, b] : cov) {
        if (a == v) ++lc;
        if (b == v) ++uc;
      }
      prof[v] = {downs, ups, lc, uc};
    }
    return prof;
  };
  auto pr1 = profile(p1), pr2 = profile(p2);
  {
    auto s1 = pr1, s2 = pr2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }

  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || pr1[v] != pr2[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        if (p1.geq(v, u) != p2.geq(w, img[u])) ok = false;
        if (p1.geq(u, v) != p2.geq(img[u], w)) ok = false;
      }
      if (!ok) continue;
      img[v] = w;
      used[w] = true;
      if (self(self, v + 1)) return true;
      img[v] = -1;
      used[w] = false;
    }
    return false;
  };
  if (rec(rec, 0)) return img;
  return std::nullopt;
}

}  // namespace latrep
