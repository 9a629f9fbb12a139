#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latrep/digraph.hpp"

// Finite lattices with explicit meet/join tables, Birkhoff's downset
// representation, and small-instance isomorphism search.

namespace latrep {

class Lattice {
 public:
  Lattice() = default;

  // Builds the meet and join tables by glb/lub search over the order.
  // Fails with the offending pair if some glb or lub is missing.
  static Lattice from_order(const Poset& p) {
    const int n = p.size();
    if (n == 0) throw domain_error("lattice: empty carrier");
    Lattice l;
    l.order_ = p;
    l.meet_.assign(static_cast<std::size_t>(n) * n, -1);
    l.join_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y) {
        int m = bound(p, x, y, /*lower=*/true);
        if (m < 0)
          throw domain_error("not a lattice: elements " + std::to_string(x) +
                             " and " + std::to_string(y) +
                             " have no greatest lower bound");
        int j = bound(p, x, y, /*lower=*/false);
        if (j < 0)
          throw domain_error("not a lattice: elements " + std::to_string(x) +
                             " and " + std::to_string(y) +
                             " have no least upper bound");
        l.meet_[x * n + y] = l.meet_[y * n + x] = m;
        l.join_[x * n + y] = l.join_[y * n + x] = j;
      }
    l.bottom_ = 0;
    l.top_ = 0;
    for (int v = 0; v < n; ++v) {
      l.bottom_ = l.meet(l.bottom_, v);
      l.top_ = l.join(l.top_, v);
    }
    l.check_axioms();
    return l;
  }

  int size() const { return order_.size(); }
  const Poset& order() const { return order_; }
  bool leq(int x, int y) const { return order_.leq(x, y); }
  bool geq(int x, int y) const { return order_.geq(x, y); }
  int meet(int x, int y) const { return meet_[x * size() + y]; }
  int join(int x, int y) const { return join_[x * size() + y]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool operator==(const Lattice& o) const {
    return order_ == o.order_ && meet_ == o.meet_ && join_ == o.join_;
  }

 private:
  static int bound(const Poset& p, int x, int y, bool lower) {
    // unique maximal common lower bound (dually minimal upper bound)
    int found = -1;
    for (int z = 0; z < p.size(); ++z) {
      bool common = lower ? (p.leq(z, x) && p.leq(z, y))
                          : (p.geq(z, x) && p.geq(z, y));
      if (!common) continue;
      if (found < 0 || (lower ? p.geq(z, found) : p.leq(z, found))) found = z;
    }
    if (found < 0) return -1;
    for (int z = 0; z < p.size(); ++z) {
      bool common = lower ? (p.leq(z, x) && p.leq(z, y))
                          : (p.geq(z, x) && p.geq(z, y));
      if (common && !(lower ? p.leq(z, found) : p.geq(z, found))) return -1;
    }
    return found;
  }

  void check_axioms() const {
    const int n = size();
    for (int x = 0; x < n; ++x)
      if (meet(x, x) != x || join(x, x) != x)
        throw invariant_error("lattice: idempotence failed");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (meet(x, join(x, y)) != x || join(x, meet(x, y)) != x)
          throw invariant_error("lattice: absorption failed");
    if (n <= 256) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            if (meet(meet(x, y), z) != meet(x, meet(y, z)) ||
                join(join(x, y), z) != join(x, join(y, z)))
              throw invariant_error("lattice: associativity failed");
          }
    }
  }

  Poset order_;
  std::vector<int> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

inline Lattice lattice_from_order(const Poset& p) { return Lattice::from_order(p); }

inline bool is_distributive(const Lattice& l) {
  const int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)))
          return false;
  return true;
}

// The non-zero join-irreducibles (dually non-top meet-irreducibles) of a
// lattice, with the order induced from it. label maps poset vertex to the
// lattice element it names.
struct IrreduciblePoset {
  Poset carrier;
  std::vector<int> label;
};

inline bool is_join_irreducible(const Lattice& l, int x) {
  if (x == l.bottom()) return false;
  for (int a = 0; a < l.size(); ++a)
    for (int b = a; b < l.size(); ++b)
      if (l.join(a, b) == x && a != x && b != x) return false;
  return true;
}
inline bool is_meet_irreducible(const Lattice& l, int x) {
  if (x == l.top()) return false;
  for (int a = 0; a < l.size(); ++a)
    for (int b = a; b < l.size(); ++b)
      if (l.meet(a, b) == x && a != x && b != x) return false;
  return true;
}

namespace detail {
inline IrreduciblePoset induced_subposet(const Lattice& l,
                                         const std::vector<int>& elems) {
  Digraph g(static_cast<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      if (l.geq(elems[a], elems[b]))
        g.add_arc(static_cast<int>(a), static_cast<int>(b));
  return {Poset(std::move(g)), elems};
}
}  // namespace detail

inline IrreduciblePoset join_irreducibles(const Lattice& l) {
  std::vector<int> elems;
  for (int x = 0; x < l.size(); ++x)
    if (is_join_irreducible(l, x)) elems.push_back(x);
  return detail::induced_subposet(l, elems);
}
inline IrreduciblePoset meet_irreducibles(const Lattice& l) {
  std::vector<int> elems;
  for (int x = 0; x < l.size(); ++x)
    if (is_meet_irreducible(l, x)) elems.push_back(x);
  return detail::induced_subposet(l, elems);
}

// A lattice whose elements are vertex sets of some universe (downsets,
// terminal sets). Element i is the set sets[i]; join is union and meet is
// intersection. Elements are in canonical order: by size, then by mask value.
struct SetFamilyLattice {
  Lattice lattice;
  std::vector<std::uint64_t> sets;
  int universe = 0;

  int index_of(std::uint64_t s) const {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (sets[i] == s) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline void sort_sets_canonical(std::vector<std::uint64_t>& sets) {
  std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
    int ca = __builtin_popcountll(a), cb = __builtin_popcountll(b);
    if (ca != cb) return ca < cb;
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

// Lattice structure of a family of sets closed under union and intersection.
inline SetFamilyLattice set_family_lattice(std::vector<std::uint64_t> sets,
                                           int universe) {
  sort_sets_canonical(sets);
  const int n = static_cast<int>(sets.size());
  if (n == 0) throw domain_error("set family lattice: empty family");
  if (n > kMaxVertices)
    throw domain_error("set family lattice: family too large: " +
                       std::to_string(n));
  std::map<std::uint64_t, int> idx;
  for (int i = 0; i < n; ++i) idx[sets[i]] = i;
  Digraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((sets[b] & ~sets[a]) == 0) g.add_arc(a, b);  // a >= b as sets
  Lattice l = Lattice::from_order(Poset(std::move(g)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto u = idx.find(sets[a] | sets[b]);
      auto m = idx.find(sets[a] & sets[b]);
      if (u == idx.end() || m == idx.end())
        throw domain_error("set family lattice: family not closed under union/intersection");
      if (l.join(a, b) != u->second || l.meet(a, b) != m->second)
        throw invariant_error("set family lattice: tables disagree with union/intersection");
    }
  return {std::move(l), std::move(sets), universe};
}

}  // namespace detail

// All downsets of a poset, ordered by inclusion.
inline SetFamilyLattice downset_lattice(const Poset& p) {
  const int n = p.size();
  if (n > 20) throw domain_error("downset lattice: poset too large");
  std::vector<std::uint64_t> down(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (p.geq(v, u)) down[v] |= std::uint64_t{1} << u;
  std::vector<std::uint64_t> sets;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if ((s >> v) & 1)
        if ((down[v] & ~s) != 0) ok = false;
    if (ok) sets.push_back(s);
  }
  return detail::set_family_lattice(std::move(sets), n);
}

// The Birkhoff isomorphism x -> { join-irreducible j : j <= x } from a
// distributive lattice onto the downset lattice of its irreducible poset.
struct BirkhoffIso {
  IrreduciblePoset irreducibles;
  SetFamilyLattice downsets;
  std::vector<int> to_downset;    // lattice element -> downset element
  std::vector<int> from_downset;  // inverse
};

inline BirkhoffIso birkhoff_map(const Lattice& l) {
  if (!is_distributive(l))
    throw domain_error("birkhoff map: lattice is not distributive");
  BirkhoffIso iso;
  iso.irreducibles = join_irreducibles(l);
  iso.downsets = downset_lattice(iso.irreducibles.carrier);
  const int k = iso.irreducibles.carrier.size();
  iso.to_downset.assign(l.size(), -1);
  iso.from_downset.assign(iso.downsets.sets.size(), -1);
  for (int x = 0; x < l.size(); ++x) {
    std::uint64_t s = 0;
    for (int j = 0; j < k; ++j)
      if (l.leq(iso.irreducibles.label[j], x)) s |= std::uint64_t{1} << j;
    int e = iso.downsets.index_of(s);
    if (e < 0) throw invariant_error("birkhoff map: image is not a downset");
    iso.to_downset[x] = e;
    iso.from_downset[e] = x;
  }
  for (int x = 0; x < l.size(); ++x) {
    if (iso.from_downset[iso.to_downset[x]] != x)
      throw invariant_error("birkhoff map: not a bijection");
    // inverse is the join of the downset
    std::uint64_t s = iso.downsets.sets[iso.to_downset[x]];
    int join = l.bottom();
    for (int j = 0; j < k; ++j)
      if ((s >> j) & 1) join = l.join(join, iso.irreducibles.label[j]);
    if (join != x) throw invariant_error("birkhoff map: join inverse failed");
  }
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y) {
      const auto& d = iso.downsets;
      if (iso.to_downset[l.meet(x, y)] !=
              d.lattice.meet(iso.to_downset[x], iso.to_downset[y]) ||
          iso.to_downset[l.join(x, y)] !=
              d.lattice.join(iso.to_downset[x], iso.to_downset[y]))
        throw invariant_error("birkhoff map: does not commute with meet/join");
    }
  return iso;
}

// First meet/join preserving bijection in canonical search order, if any.
inline std::optional<std::vector<int>> are_isomorphic(const Lattice& l1,
                                                      const Lattice& l2) {
  const int n = l1.size();
  if (n != l2.size()) return std::nullopt;
  auto profile = [](const Lattice& l) {
    std::vector<std::array<int, 4>> prof(l.size());
    for (int v = 0; v < l.size(); ++v) {
      int downs = 0, ups = 0, lc = 0, uc = 0;
      for (int u = 0; u < l.size(); ++u) {
        if (l.leq(u, v)) ++downs;
        if (l.geq(u, v)) ++ups;
        if (l.order().covers(v, u)) ++lc;
        if (l.order().covers(u, v)) ++uc;
      }
      prof[v] = {downs, ups, lc, uc};
    }
    return prof;
  };
  auto pr1 = profile(l1), pr2 = profile(l2);
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
      for (int u = 0; u <= v && ok; ++u) {
        if (img[u] < 0) continue;
        int m1 = l1.meet(v, u), j1 = l1.join(v, u);
        int m2 = l2.meet(w, img[u]), j2 = l2.join(w, img[u]);
        // consistency only where both sides are already assigned
        if (img[m1] >= 0 && img[m1] != m2) ok = false;
        if (img[j1] >= 0 && img[j1] != j2) ok = false;
        if (m1 == v && m2 != w) ok = false;
        if (j1 == v && j2 != w) ok = false;
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
  if (!rec(rec, 0)) return std::nullopt;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (img[l1.meet(x, y)] != l2.meet(img[x], img[y]) ||
          img[l1.join(x, y)] != l2.join(img[x], img[y]))
        return std::nullopt;
  return img;
}

// Hasse arcs of the lattice, as (upper, lower) pairs.
inline std::vector<std::pair<int, int>> covers(const Lattice& l) {
  return l.order().cover_pairs();
}

// Length of a maximum ascending chain of covers from bottom to top.
inline int height(const Lattice& l) {
  const int n = l.size();
  auto cov = covers(l);
  // longest path in the cover DAG, walking upward
  std::vector<int> best(n, -1);
  best[l.bottom()] = 0;
  auto order = l.order().linear_extension();
  for (int v : order) {
    if (best[v] < 0) continue;
    for (auto& [a, b] : cov)
      if (b == v) best[a] = std::max(best[a], best[v] + 1);
  }
  if (best[l.top()] < 0)
    throw invariant_error("height: top unreachable from bottom by covers");
  return best[l.top()];
}

// The n-element chain 0 < 1 < ... < n-1 as a lattice.
inline Lattice chain_lattice(int n) {
  Digraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) g.add_arc(a, b);
  return Lattice::from_order(Poset(std::move(g)));
}

}  // namespace latrep
