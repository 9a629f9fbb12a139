#pragma once

#include <cstdint>
#include <vector>

#include "latrep/intervals.hpp"

// Terminal-set lattices of reflexive digraphs, independent-set posets of
// general digraphs, the coordinate maps between sublattices of chain
// products and both, and the maximum-independent-set lattice.

namespace latrep {

// Vertex set closed under out-arcs; proper means neither empty nor all.
struct TerminalSet {
  std::uint64_t members = 0;
  bool proper = false;
};

namespace detail {
inline void check_mask_capacity(const Digraph& d, const char* what) {
  if (d.size() > 64)
    throw domain_error(std::string(what) + ": more than 64 vertices");
}
}  // namespace detail

inline bool is_terminal(const Digraph& d, std::uint64_t s) {
  detail::check_mask_capacity(d, "terminal set");
  for (int u = 0; u < d.size(); ++u) {
    if (!((s >> u) & 1)) continue;
    for (int v : d.out(u).to_vector())
      if (!((s >> v) & 1)) return false;
  }
  return true;
}

// All terminal sets of d, canonical order. Every terminal set is a union of
// single-vertex out-closures, so generate those and close under union.
inline std::vector<std::uint64_t> terminal_family(const Digraph& d) {
  detail::check_mask_capacity(d, "terminal family");
  const int n = d.size();
  Digraph reach = transitive_closure(d);
  std::vector<std::uint64_t> principal(n);
  for (int v = 0; v < n; ++v) {
    std::uint64_t s = std::uint64_t{1} << v;
    for (int u : reach.out(v).to_vector()) s |= std::uint64_t{1} << u;
    principal[v] = s;
  }
  std::set<std::uint64_t> all;
  all.insert(0);
  for (int v = 0; v < n; ++v) {
    std::vector<std::uint64_t> grown;
    for (std::uint64_t s : all)
      if (!all.count(s | principal[v])) grown.push_back(s | principal[v]);
    for (std::uint64_t s : grown) all.insert(s);
    if (all.size() > (1u << 20))
      throw domain_error("terminal family: too many terminal sets");
  }
  std::vector<std::uint64_t> out(all.begin(), all.end());
  detail::sort_sets_canonical(out);
  return out;
}

// Lattice of proper terminal sets under inclusion. The family must be closed
// under union and intersection, which holds for every spanning supergraph of
// a pointed chain union; disconnected reflexive digraphs can fail it.
inline SetFamilyLattice terminal_lattice(const Digraph& d) {
  const std::uint64_t full =
      d.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d.size()) - 1;
  std::vector<std::uint64_t> proper;
  for (std::uint64_t s : terminal_family(d))
    if (s != 0 && s != full) proper.push_back(s);
  if (proper.empty())
    throw domain_error("terminal lattice: no proper terminal set");
  return detail::set_family_lattice(std::move(proper), d.size());
}

// T_x over the pointed vertices: the global bottom plus every chain level
// at most the corresponding coordinate. Never contains the global top.
inline TerminalSet map_T(const ChainProduct& p, const Tuple& x) {
  p.check_tuple(x);
  PointedVertexLayout lay(p);
  std::uint64_t s = std::uint64_t{1} << lay.zero();
  for (int i = 1; i <= p.d(); ++i)
    for (int level = 1; level <= x[i - 1]; ++level)
      s |= std::uint64_t{1} << lay.id(i, level);
  bool proper = true;  // contains the bottom, misses the top
  return {s, proper};
}

// Coordinatewise maxima of the levels present in the set.
inline Tuple map_T_inverse(const ChainProduct& p, std::uint64_t members) {
  PointedVertexLayout lay(p);
  Tuple x(p.d(), 0);
  for (int i = 1; i <= p.d(); ++i)
    for (int level = p.sizes[i - 1]; level >= 1; --level)
      if ((members >> lay.id(i, level)) & 1) {
        x[i - 1] = level;
        break;
      }
  return x;
}

// The independent sets of a digraph of one size, under reachability order:
// I >= I' when every member of I has a (possibly trivial) path to a member
// of I'. sets[k] is the vertex mask of element k.
struct IndependentSetPoset {
  Poset order;
  std::vector<std::uint64_t> sets;
};

inline IndependentSetPoset independent_sets_d(const Digraph& a, int d) {
  detail::check_mask_capacity(a, "independent sets");
  if (d < 0) throw domain_error("independent sets: negative size");
  const int n = a.size();
  Digraph r = nontrivial_reach(a);
  std::vector<int> ok;  // vertices with no non-trivial path to themselves
  for (int v = 0; v < n; ++v)
    if (!r.has_arc(v, v)) ok.push_back(v);

  std::vector<std::uint64_t> sets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(cur.size()) == d) {
      std::uint64_t s = 0;
      for (int v : cur) s |= std::uint64_t{1} << v;
      sets.push_back(s);
      return;
    }
    for (std::size_t k = from; k < ok.size(); ++k) {
      int v = ok[k];
      bool indep = true;
      for (int u : cur)
        if (r.has_arc(u, v) || r.has_arc(v, u)) {
          indep = false;
          break;
        }
      if (!indep) continue;
      cur.push_back(v);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(sets.begin(), sets.end());

  const int m = static_cast<int>(sets.size());
  Digraph g(m);
  auto dominates = [&](std::uint64_t hi, std::uint64_t lo) {
    for (int v = 0; v < n; ++v) {
      if (!((hi >> v) & 1)) continue;
      bool found = false;
      for (int u = 0; u < n && !found; ++u)
        if (((lo >> u) & 1) && (u == v || r.has_arc(v, u))) found = true;
      if (!found) return false;
    }
    return true;
  };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (dominates(sets[x], sets[y])) g.add_arc(x, y);
  if (!g.is_antisymmetric())
    throw invariant_error(
        "independent sets: reachability order is not antisymmetric");
  if (!g.is_transitive() || !g.is_reflexive())
    throw invariant_error("independent sets: reachability order is not a preorder");
  return {Poset(std::move(g)), std::move(sets)};
}

// The coordinate bijection between the size-d independent sets of the A
// construction and the proper terminal sets of the D construction:
// {x_1 e_1, ..., x_d e_d}  <->  T_x. Verified order-preserving both ways.
struct DualityMap {
  std::vector<std::uint64_t> independents;  // over the chain union vertices
  std::vector<std::uint64_t> terminals;     // paired by index, pointed vertices
};

inline DualityMap duality_map(const IntervalFamily& fam) {
  const ChainProduct& p = fam.product;
  ChainVertexLayout cl(p);
  Digraph a = construct_A(fam);
  Digraph dd = construct_D(fam);
  IndependentSetPoset ind = independent_sets_d(a, p.d());
  SetFamilyLattice term = terminal_lattice(dd);
  if (ind.sets.size() != term.sets.size())
    throw invariant_error("duality map: side sizes differ");

  DualityMap out;
  std::vector<int> to_term(ind.sets.size());
  for (std::size_t k = 0; k < ind.sets.size(); ++k) {
    // one vertex per tournament; read its level as the coordinate
    Tuple x(p.d(), -1);
    for (int v = 0; v < a.size(); ++v)
      if ((ind.sets[k] >> v) & 1) {
        auto [i, level] = cl.coordinate(v);
        if (x[i - 1] != -1)
          throw invariant_error("duality map: two members in one tournament");
        x[i - 1] = level;
      }
    for (int c : x)
      if (c < 0) throw invariant_error("duality map: tournament not hit");
    int t = term.index_of(map_T(p, x).members);
    if (t < 0) throw invariant_error("duality map: image is not terminal");
    to_term[k] = t;
    out.independents.push_back(ind.sets[k]);
    out.terminals.push_back(term.sets[t]);
  }
  std::vector<bool> hit(term.sets.size(), false);
  for (int t : to_term) {
    if (hit[t]) throw invariant_error("duality map: not injective");
    hit[t] = true;
  }
  for (std::size_t x = 0; x < ind.sets.size(); ++x)
    for (std::size_t y = 0; y < ind.sets.size(); ++y) {
      bool lhs = ind.order.geq(static_cast<int>(x), static_cast<int>(y));
      bool rhs = term.lattice.geq(to_term[x], to_term[y]);
      if (lhs != rhs)
        throw invariant_error("duality map: order not preserved");
    }
  return out;
}

// Lattice of maximum-sized independent sets. Follows the decomposition
// proof: drop redundant cycle arcs, pass to the reachability poset on the
// cycle-free vertices, Dilworth-decompose it, embed the independent sets
// into the corresponding tuple space, and read the order off the embedding.
// Declared here, defined in embeddings.hpp (needs the decomposition).
SetFamilyLattice max_independent_lattice(const Digraph& a);

}  // namespace latrep
