#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "latrep/lattice.hpp"

// Products of chains, irreducible intervals, interval-family closure, and the
// digraph constructions that encode removed intervals: arcs added to the
// tournament union (A side) and to the pointed chain union (D side), with the
// level-shift construction K relating them.

namespace latrep {

using Tuple = std::vector<int>;

// The product of d chains with top levels (n_1, ..., n_d); elements are
// d-tuples x with 0 <= x_i <= n_i, ordered coordinatewise.
struct ChainProduct {
  std::vector<int> sizes;

  ChainProduct() = default;
  explicit ChainProduct(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw domain_error("chain product: needs d >= 1 chains");
    for (int n : sizes)
      if (n < 1) throw domain_error("chain product: chain sizes must be >= 1");
  }

  int d() const { return static_cast<int>(sizes.size()); }

  long long element_count() const {
    long long c = 1;
    for (int n : sizes) {
      c *= (n + 1);
      if (c > (1 << 20))
        throw domain_error("chain product: too many elements to enumerate");
    }
    return c;
  }

  bool valid_tuple(const Tuple& x) const {
    if (static_cast<int>(x.size()) != d()) return false;
    for (int i = 0; i < d(); ++i)
      if (x[i] < 0 || x[i] > sizes[i]) return false;
    return true;
  }
  void check_tuple(const Tuple& x) const {
    if (!valid_tuple(x)) throw domain_error("chain product: tuple out of range");
  }

  // row-major index, first coordinate most significant
  long long index_of(const Tuple& x) const {
    long long idx = 0;
    for (int i = 0; i < d(); ++i) idx = idx * (sizes[i] + 1) + x[i];
    return idx;
  }
  Tuple tuple_at(long long idx) const {
    Tuple x(d());
    for (int i = d() - 1; i >= 0; --i) {
      x[i] = static_cast<int>(idx % (sizes[i] + 1));
      idx /= (sizes[i] + 1);
    }
    return x;
  }
  std::vector<Tuple> all_tuples() const {
    std::vector<Tuple> out;
    long long c = element_count();
    out.reserve(c);
    for (long long i = 0; i < c; ++i) out.push_back(tuple_at(i));
    return out;
  }

  bool tuple_leq(const Tuple& x, const Tuple& y) const {
    for (int i = 0; i < d(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  }
  Tuple tuple_meet(const Tuple& x, const Tuple& y) const {
    Tuple z(d());
    for (int i = 0; i < d(); ++i) z[i] = std::min(x[i], y[i]);
    return z;
  }
  Tuple tuple_join(const Tuple& x, const Tuple& y) const {
    Tuple z(d());
    for (int i = 0; i < d(); ++i) z[i] = std::max(x[i], y[i]);
    return z;
  }
  Tuple bottom_tuple() const { return Tuple(d(), 0); }
  Tuple top_tuple() const { return Tuple(sizes.begin(), sizes.end()); }

  bool operator==(const ChainProduct& o) const { return sizes == o.sizes; }
};

// The irreducible interval { x : alpha <= x_i and x_j <= beta }.
// Coordinates are 1-based, levels 0-based, matching the text format.
struct Interval {
  int i = 1, j = 1, alpha = 0, beta = 0;
  auto operator<=>(const Interval&) const = default;
};

inline bool interval_is_empty(const Interval& iv) {
  return iv.i == iv.j && iv.beta < iv.alpha;
}

inline void check_interval(const ChainProduct& p, const Interval& iv) {
  if (iv.i < 1 || iv.i > p.d() || iv.j < 1 || iv.j > p.d())
    throw domain_error("interval: coordinate out of range");
  if (iv.alpha < 0 || iv.alpha > p.sizes[iv.i - 1] || iv.beta < 0 ||
      iv.beta > p.sizes[iv.j - 1])
    throw domain_error("interval: level out of range");
}

inline std::vector<Tuple> interval_members(const ChainProduct& p,
                                           const Interval& iv) {
  check_interval(p, iv);
  std::vector<Tuple> out;
  for (const Tuple& x : p.all_tuples())
    if (x[iv.i - 1] >= iv.alpha && x[iv.j - 1] <= iv.beta) out.push_back(x);
  return out;
}

// Set of irreducible intervals of one product. Always carries the empty
// same-coordinate intervals (i,i,alpha,beta) with beta < alpha; a family is a
// value, so construction normalizes.
struct IntervalFamily {
  ChainProduct product;
  std::set<Interval> intervals;

  IntervalFamily() = default;
  explicit IntervalFamily(ChainProduct p, std::set<Interval> ivs = {})
      : product(std::move(p)), intervals(std::move(ivs)) {
    for (const Interval& iv : intervals) check_interval(product, iv);
    for (int i = 1; i <= product.d(); ++i)
      for (int a = 1; a <= product.sizes[i - 1]; ++a)
        for (int b = 0; b < a; ++b) intervals.insert({i, i, a, b});
  }

  bool contains(const Interval& iv) const { return intervals.count(iv) > 0; }
  void insert(const Interval& iv) {
    check_interval(product, iv);
    intervals.insert(iv);
  }

  // every interval shape valid for the product, in canonical order
  std::vector<Interval> all_shapes() const {
    std::vector<Interval> out;
    for (int i = 1; i <= product.d(); ++i)
      for (int j = 1; j <= product.d(); ++j)
        for (int a = 0; a <= product.sizes[i - 1]; ++a)
          for (int b = 0; b <= product.sizes[j - 1]; ++b)
            out.push_back({i, j, a, b});
    return out;
  }

  // membership predicate of the union of members
  std::vector<bool> union_mask() const {
    std::vector<bool> mask(product.element_count(), false);
    long long c = product.element_count();
    for (long long e = 0; e < c; ++e) {
      Tuple x = product.tuple_at(e);
      for (const Interval& iv : intervals)
        if (x[iv.i - 1] >= iv.alpha && x[iv.j - 1] <= iv.beta) {
          mask[e] = true;
          break;
        }
    }
    return mask;
  }

  bool operator==(const IntervalFamily& o) const {
    return product == o.product && intervals == o.intervals;
  }
};

// A nonempty subset of a product closed under coordinatewise min and max.
struct Sublattice {
  ChainProduct product;
  std::vector<Tuple> elements;  // sorted by index

  Sublattice() = default;
  Sublattice(ChainProduct p, std::vector<Tuple> elems)
      : product(std::move(p)), elements(std::move(elems)) {
    for (const Tuple& x : elements) product.check_tuple(x);
    std::sort(elements.begin(), elements.end(),
              [&](const Tuple& a, const Tuple& b) {
                return product.index_of(a) < product.index_of(b);
              });
    elements.erase(std::unique(elements.begin(), elements.end()),
                   elements.end());
    if (elements.empty())
      throw contract_error("sublattice: empty element set");
    for (const Tuple& x : elements)
      for (const Tuple& y : elements) {
        if (!contains(product.tuple_meet(x, y)))
          throw contract_error("sublattice: not closed under coordinatewise min");
        if (!contains(product.tuple_join(x, y)))
          throw contract_error("sublattice: not closed under coordinatewise max");
      }
  }

  bool contains(const Tuple& x) const {
    long long key = product.index_of(x);
    auto it = std::lower_bound(
        elements.begin(), elements.end(), key,
        [&](const Tuple& a, long long k) { return product.index_of(a) < k; });
    return it != elements.end() && product.index_of(*it) == key;
  }
  int size() const { return static_cast<int>(elements.size()); }

  // the abstract lattice of this sublattice, elements in stored order
  Lattice to_lattice() const {
    Digraph g(size());
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (product.tuple_leq(elements[b], elements[a])) g.add_arc(a, b);
    return Lattice::from_order(Poset(std::move(g)));
  }

  bool operator==(const Sublattice& o) const {
    return product == o.product && elements == o.elements;
  }
};

// P minus the union of the family's members. The result is closed under
// min and max whenever nonempty; asserted anyway.
inline Sublattice remove(const ChainProduct& p, const IntervalFamily& fam) {
  std::vector<bool> removed = fam.union_mask();
  std::vector<Tuple> kept;
  long long c = p.element_count();
  for (long long e = 0; e < c; ++e)
    if (!removed[e]) kept.push_back(p.tuple_at(e));
  if (kept.empty())
    throw domain_error("remove: empty sublattice (family covers the product)");
  return Sublattice(p, std::move(kept));
}

// The closed family of every interval disjoint from the sublattice.
inline IntervalFamily rival_extract(const ChainProduct& p, const Sublattice& l) {
  if (!(l.product == p))
    throw contract_error("rival extract: sublattice belongs to another product");
  IntervalFamily fam(p);
  // exists[i][j][a][b]: some element has x_i = a and x_j = b
  const int d = p.d();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      std::vector<std::vector<char>> exists(
          p.sizes[i - 1] + 1, std::vector<char>(p.sizes[j - 1] + 1, 0));
      for (const Tuple& x : l.elements) exists[x[i - 1]][x[j - 1]] = 1;
      for (int a = 0; a <= p.sizes[i - 1]; ++a)
        for (int b = 0; b <= p.sizes[j - 1]; ++b) {
          bool hit = false;
          for (int aa = a; aa <= p.sizes[i - 1] && !hit; ++aa)
            for (int bb = 0; bb <= b && !hit; ++bb)
              if (exists[aa][bb]) hit = true;
          if (!hit) fam.insert({i, j, a, b});
        }
    }
  return fam;
}

// Minimal closed superfamily with the same union of members.
inline IntervalFamily close_family(const IntervalFamily& fam) {
  std::vector<bool> covered = fam.union_mask();
  IntervalFamily out(fam.product);
  for (const Interval& iv : fam.all_shapes()) {
    bool inside = true;
    for (const Tuple& x : interval_members(fam.product, iv))
      if (!covered[fam.product.index_of(x)]) {
        inside = false;
        break;
      }
    if (inside) out.insert(iv);
  }
  return out;
}

inline bool is_closed(const IntervalFamily& fam) {
  return fam == close_family(fam);
}

// Vertex layout for the chain union C (levels 0..n_i per coordinate) and its
// loopless tournament union. Coordinate-major ids.
struct ChainVertexLayout {
  std::vector<int> sizes;
  std::vector<int> offset;
  int total = 0;

  explicit ChainVertexLayout(const ChainProduct& p) : sizes(p.sizes) {
    offset.resize(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      offset[i] = total;
      total += sizes[i] + 1;
    }
  }
  // coordinate 1-based, level in [0, n_i]
  int id(int i, int level) const { return offset[i - 1] + level; }
  std::pair<int, int> coordinate(int v) const {
    for (int i = static_cast<int>(sizes.size()); i >= 1; --i)
      if (v >= offset[i - 1]) return {i, v - offset[i - 1]};
    throw domain_error("chain layout: bad vertex id");
  }
  std::string name(int v) const {
    auto [i, level] = coordinate(v);
    return std::to_string(level) + "e" + std::to_string(i);
  }
};

// Vertex layout for the pointed chain union: levels 1..n_i per coordinate
// come first, then the global bottom and the global top. Level 0 and level
// n_i + 1 alias the globals.
struct PointedVertexLayout {
  std::vector<int> sizes;
  std::vector<int> offset;
  int interior = 0;

  explicit PointedVertexLayout(const ChainProduct& p) : sizes(p.sizes) {
    offset.resize(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      offset[i] = interior;
      interior += sizes[i];
    }
  }
  int zero() const { return interior; }
  int infinity() const { return interior + 1; }
  int total() const { return interior + 2; }
  // coordinate 1-based, level in [0, n_i + 1]; aliases resolved here
  int id(int i, int level) const {
    if (level == 0) return zero();
    if (level == sizes[i - 1] + 1) return infinity();
    return offset[i - 1] + level - 1;
  }
  bool is_interior(int v) const { return v < interior; }
  std::pair<int, int> coordinate(int v) const {
    for (int i = static_cast<int>(sizes.size()); i >= 1; --i)
      if (v >= offset[i - 1]) return {i, v - offset[i - 1] + 1};
    throw domain_error("pointed layout: bad vertex id");
  }
  std::string name(int v) const {
    if (v == zero()) return "0";
    if (v == infinity()) return "inf";
    auto [i, level] = coordinate(v);
    return std::to_string(level) + "e" + std::to_string(i);
  }

  // full order digraph of the pointed chain union (reflexive, transitive)
  Digraph base() const {
    Digraph g(total());
    for (int v = 0; v < total(); ++v) {
      g.add_arc(v, v);
      g.add_arc(infinity(), v);
      g.add_arc(v, zero());
    }
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (int a = 1; a <= sizes[i]; ++a)
        for (int b = 1; b < a; ++b)
          g.add_arc(offset[i] + a - 1, offset[i] + b - 1);
    return g;
  }
};

// Loopless transitive tournament union on the chain vertices.
inline Digraph tournament_union(const ChainProduct& p) {
  ChainVertexLayout lay(p);
  Digraph g(lay.total);
  for (int i = 1; i <= p.d(); ++i)
    for (int a = 0; a <= p.sizes[i - 1]; ++a)
      for (int b = 0; b < a; ++b) g.add_arc(lay.id(i, a), lay.id(i, b));
  return g;
}

// Spanning supergraph of the tournament union with one arc
// alpha e_i -> beta e_j per interval of the family.
inline Digraph construct_A(const IntervalFamily& fam) {
  ChainVertexLayout lay(fam.product);
  Digraph g = tournament_union(fam.product);
  for (const Interval& iv : fam.intervals)
    g.add_arc(lay.id(iv.i, iv.alpha), lay.id(iv.j, iv.beta));
  return g;
}

// Spanning supergraph of the pointed chain union with one arc
// alpha e_i -> (beta+1) e_j per interval, aliases resolved at insertion.
inline Digraph construct_D(const IntervalFamily& fam) {
  PointedVertexLayout lay(fam.product);
  Digraph g = lay.base();
  for (const Interval& iv : fam.intervals)
    g.add_arc(lay.id(iv.i, iv.alpha), lay.id(iv.j, iv.beta + 1));
  return g;
}

// Level shift taking a supergraph of the chain union to a supergraph of the
// pointed chain union: every arc target moves up one level.
inline Digraph koh_K(const ChainProduct& p, const Digraph& a) {
  ChainVertexLayout cl(p);
  PointedVertexLayout pl(p);
  if (a.size() != cl.total)
    throw domain_error("koh K: digraph is not on the chain union vertices");
  Digraph g = pl.base();
  for (auto [u, v] : a.arcs()) {
    auto [i, alpha] = cl.coordinate(u);
    auto [j, beta] = cl.coordinate(v);
    g.add_arc(pl.id(i, alpha), pl.id(j, beta + 1));
  }
  return g;
}

// Down shift. Arcs out of the global bottom unalias to level 0 of every
// coordinate; arcs into the global top unalias to the top of every chain.
// Base arcs of the pointed scaffold have no preimage and are dropped.
inline Digraph koh_K_inverse(const ChainProduct& p, const Digraph& d) {
  ChainVertexLayout cl(p);
  PointedVertexLayout pl(p);
  if (d.size() != pl.total())
    throw domain_error("koh K inverse: digraph is not on the pointed vertices");
  Digraph g = tournament_union(p);
  for (auto [u, v] : d.arcs()) {
    if (v == pl.zero()) continue;  // target would need level -1
    std::vector<std::pair<int, int>> sources;
    if (u == pl.zero()) {
      for (int i = 1; i <= p.d(); ++i) sources.emplace_back(i, 0);
    } else if (u == pl.infinity()) {
      continue;  // not a chain-union vertex
    } else {
      auto [i, alpha] = pl.coordinate(u);
      sources.emplace_back(i, alpha);
    }
    std::vector<std::pair<int, int>> targets;
    if (v == pl.infinity()) {
      for (int j = 1; j <= p.d(); ++j) targets.emplace_back(j, p.sizes[j - 1]);
    } else {
      auto [j, beta] = pl.coordinate(v);
      targets.emplace_back(j, beta - 1);
    }
    for (auto [i, alpha] : sources)
      for (auto [j, beta] : targets) g.add_arc(cl.id(i, alpha), cl.id(j, beta));
  }
  return g;
}

// Inverse of construct_A: one interval per non-tournament arc.
inline IntervalFamily intervals_from_A(const ChainProduct& p, const Digraph& a) {
  ChainVertexLayout lay(p);
  if (a.size() != lay.total)
    throw format_error("intervals from A: digraph is not on the chain union vertices");
  Digraph t = tournament_union(p);
  IntervalFamily fam(p);
  for (auto [u, v] : a.arcs()) {
    auto [i, alpha] = lay.coordinate(u);
    auto [j, beta] = lay.coordinate(v);
    if (i == j && alpha > beta) continue;  // tournament arc
    fam.insert({i, j, alpha, beta});
  }
  for (auto [u, v] : t.arcs())
    if (!a.has_arc(u, v))
      throw format_error("intervals from A: missing tournament arc " +
                         lay.name(u) + " -> " + lay.name(v));
  return fam;
}

// Is the interval (i,j,alpha,beta) inside the union of the family?
// Decided by path existence in the D construction; a negative answer comes
// with an element of the complement witnessing it.
struct PathCoverage {
  bool covered = false;
  std::optional<Tuple> witness;
};

inline PathCoverage path_covered(const IntervalFamily& fam, int i, int j,
                                 int alpha, int beta) {
  const ChainProduct& p = fam.product;
  check_interval(p, {i, j, alpha, beta});
  PointedVertexLayout lay(p);
  Digraph d = construct_D(fam);
  Digraph reach = transitive_closure(d);
  int src = lay.id(i, alpha);
  int dst = lay.id(j, beta + 1);
  auto reaches = [&](int a, int b) { return a == b || reach.has_arc(a, b); };
  if (reaches(src, dst)) return {true, std::nullopt};
  // witness: per coordinate the highest level reachable from the source
  Tuple x(p.d(), 0);
  for (int k = 1; k <= p.d(); ++k)
    for (int level = p.sizes[k - 1]; level >= 1; --level)
      if (reaches(src, lay.id(k, level))) {
        x[k - 1] = level;
        break;
      }
  Sublattice l = remove(p, fam);
  if (!l.contains(x))
    throw invariant_error("path covered: witness fell outside the sublattice");
  if (x[i - 1] < alpha || x[j - 1] > beta)
    throw invariant_error("path covered: witness does not witness");
  return {false, x};
}

// The product itself as a lattice, elements in index order.
inline Lattice product_lattice(const ChainProduct& p) {
  long long c = p.element_count();
  if (c > kMaxVertices) throw domain_error("product lattice: too many elements");
  const int n = static_cast<int>(c);
  Digraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.tuple_leq(p.tuple_at(b), p.tuple_at(a))) g.add_arc(a, b);
  return Lattice::from_order(Poset(std::move(g)));
}

}  // namespace latrep
