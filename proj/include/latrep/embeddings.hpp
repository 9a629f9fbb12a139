#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "latrep/representations.hpp"

// Sublattice classification, Dilworth decomposition, recovery of the
// irreducible poset from tight sublattices, and the one-to-one correspondence
// between embeddings into chain products and pointed chain covers.

namespace latrep {

struct Classification {
  bool full = false;
  bool subdirect = false;
  bool tight = false;
};

// full: contains both bounds of the product. subdirect: every coordinate
// projection is surjective. tight: full and covers of L are covers of P.
// Each flag is computed from its definition and cross-checked against the
// digraph criteria of the closed extracted family; disagreement is a bug.
inline Classification classify(const ChainProduct& p, const Sublattice& l) {
  Classification c;
  c.full = l.contains(p.bottom_tuple()) && l.contains(p.top_tuple());
  c.subdirect = true;
  for (int i = 1; i <= p.d() && c.subdirect; ++i)
    for (int v = 0; v <= p.sizes[i - 1] && c.subdirect; ++v) {
      bool hit = false;
      for (const Tuple& x : l.elements)
        if (x[i - 1] == v) {
          hit = true;
          break;
        }
      if (!hit) c.subdirect = false;
    }
  Lattice abstract = l.to_lattice();
  c.tight = c.full;
  if (c.tight) {
    for (auto [a, b] : covers(abstract)) {
      int diff = 0;
      for (int i = 0; i < p.d(); ++i)
        diff += l.elements[a][i] - l.elements[b][i];
      if (diff != 1) {
        c.tight = false;
        break;
      }
    }
  }

  // digraph criteria on the closed family
  IntervalFamily fam = rival_extract(p, l);
  Digraph dd = construct_D(fam);
  Digraph aa = construct_A(fam);
  PointedVertexLayout lay(p);

  bool full_d = true;  // global top a source, global bottom a sink
  for (int v = 0; v < dd.size(); ++v) {
    if (v != lay.infinity() && dd.has_arc(v, lay.infinity())) full_d = false;
    if (v != lay.zero() && dd.has_arc(lay.zero(), v)) full_d = false;
  }
  bool no_up_edges = true;
  for (int i = 1; i <= p.d(); ++i)
    for (int a = 0; a <= p.sizes[i - 1]; ++a)
      if (dd.has_arc(lay.id(i, a), lay.id(i, a + 1))) no_up_edges = false;
  bool a_irreflexive = true;
  for (int v = 0; v < aa.size(); ++v)
    if (aa.has_arc(v, v)) a_irreflexive = false;
  bool a_strongly_acyclic = is_strongly_acyclic(aa);
  bool tight_d = full_d && is_acyclic(dd);
  bool tight_h = c.full && height(abstract) == std::accumulate(p.sizes.begin(),
                                                               p.sizes.end(), 0);

  if (c.full != full_d || c.subdirect != no_up_edges ||
      c.subdirect != a_irreflexive || c.subdirect != a_strongly_acyclic ||
      c.tight != tight_d || c.tight != tight_h)
    throw invariant_error("classify: definitional and digraph criteria disagree");
  if ((c.tight && !c.subdirect) || (c.subdirect && !c.full))
    throw invariant_error("classify: tight => subdirect => full violated");
  return c;
}

// Minimum chain partition via maximum matching on the strict-order split
// graph. Returns exactly width(p) chains, each listed ascending.
inline std::vector<std::vector<int>> dilworth_decompose(const Poset& p) {
  const int n = p.size();
  std::vector<int> match_down(n, -1);  // u -> next smaller element of its chain
  std::vector<int> match_up(n, -1);
  std::vector<char> seen;
  auto try_augment = [&](auto&& self, int u) -> bool {
    for (int v = 0; v < n; ++v) {
      if (v == u || !p.geq(u, v) || seen[v]) continue;
      seen[v] = 1;
      if (match_up[v] < 0 || self(self, match_up[v])) {
        match_down[u] = v;
        match_up[v] = u;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n; ++u) {
    seen.assign(n, 0);
    try_augment(try_augment, u);
  }
  std::vector<std::vector<int>> chains;
  for (int head = 0; head < n; ++head) {
    if (match_up[head] >= 0) continue;  // not the top of a chain
    std::vector<int> chain;
    for (int v = head; v >= 0; v = match_down[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    chains.push_back(std::move(chain));
  }
  std::sort(chains.begin(), chains.end());
  if (static_cast<int>(chains.size()) != poset_width(p))
    throw invariant_error("dilworth: chain count differs from width");
  for (const auto& chain : chains)
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
      if (!p.geq(chain[k + 1], chain[k]))
        throw invariant_error("dilworth: produced a non-chain");
  return chains;
}

// An isomorphism of a lattice onto a sublattice of a chain product,
// stored as the per-element image tuple.
struct Embedding {
  Lattice source;
  ChainProduct target;
  std::vector<Tuple> image;

  void validate() const {
    if (static_cast<int>(image.size()) != source.size())
      throw contract_error("embedding: image size mismatch");
    for (const Tuple& t : image) target.check_tuple(t);
    for (int x = 0; x < source.size(); ++x)
      for (int y = 0; y < source.size(); ++y) {
        if (x < y && image[x] == image[y])
          throw contract_error("embedding: not injective");
        if (target.tuple_meet(image[x], image[y]) != image[source.meet(x, y)] ||
            target.tuple_join(image[x], image[y]) != image[source.join(x, y)])
          throw contract_error("embedding: meet/join not preserved");
      }
  }

  Sublattice image_sublattice() const { return Sublattice(target, image); }
};

// The Birkhoff/Dilworth embedding x -> (|S_x ∩ chain_1|, ..., |S_x ∩ chain_d|)
// determined by a chain decomposition of the join-irreducible poset.
// The result is always tight.
inline Embedding embed_from_decomposition(
    const Lattice& l, const std::vector<std::vector<int>>& chains) {
  if (!is_distributive(l))
    throw domain_error("embed: lattice is not distributive");
  IrreduciblePoset irr = join_irreducibles(l);
  const int k = irr.carrier.size();
  std::vector<int> seen(k, 0);
  for (const auto& chain : chains) {
    if (chain.empty())
      throw contract_error("embed: decomposition contains an empty chain");
    for (std::size_t a = 0; a < chain.size(); ++a) {
      int v = chain[a];
      if (v < 0 || v >= k || seen[v]++)
        throw contract_error("embed: decomposition is not a partition");
      if (a + 1 < chain.size() && !irr.carrier.geq(chain[a + 1], chain[a]))
        throw contract_error("embed: decomposition part is not a chain");
    }
  }
  for (int v = 0; v < k; ++v)
    if (!seen[v]) throw contract_error("embed: decomposition misses a vertex");

  std::vector<int> sizes;
  for (const auto& chain : chains) sizes.push_back(static_cast<int>(chain.size()));
  ChainProduct target(sizes);
  Embedding e;
  e.source = l;
  e.target = target;
  for (int x = 0; x < l.size(); ++x) {
    Tuple t(target.d(), 0);
    for (int c = 0; c < target.d(); ++c)
      for (int v : chains[c])
        if (l.leq(irr.label[v], x)) ++t[c];
    e.image.push_back(std::move(t));
  }
  e.validate();
  if (!classify(target, e.image_sublattice()).tight)
    throw invariant_error("embed: decomposition embedding is not tight");
  return e;
}

// Subgraph induced by the interior chain vertices (drop global bottom/top).
inline Digraph d_star(const ChainProduct& p, const Digraph& d) {
  PointedVertexLayout lay(p);
  if (d.size() != lay.total())
    throw domain_error("d star: digraph is not on the pointed vertices");
  std::vector<int> keep(lay.interior);
  std::iota(keep.begin(), keep.end(), 0);
  return d.induced(keep);
}

// For a tight sublattice, the interior of the D construction is the poset of
// join-irreducibles of the abstract lattice. Returns it with the witnessing
// isomorphism onto the irreducibles.
struct RecoveredJ {
  Poset poset;                           // on interior chain vertices
  std::vector<int> irreducible_element;  // vertex -> element id in the sublattice
};

inline RecoveredJ recover_J(const ChainProduct& p, const Sublattice& l) {
  IntervalFamily fam = rival_extract(p, l);
  Classification c = classify(p, l);
  if (!c.tight)
    throw domain_error(
        "recover J: sublattice is not tight; quotient the D construction "
        "through its condensation instead");
  Digraph dd = construct_D(fam);
  Poset jposet(d_star(p, dd));
  Lattice abstract = l.to_lattice();
  IrreduciblePoset irr = join_irreducibles(abstract);
  auto iso = poset_isomorphism(jposet, irr.carrier);
  if (!iso)
    throw invariant_error("recover J: interior poset is not the irreducible poset");
  RecoveredJ out;
  out.poset = jposet;
  out.irreducible_element.resize(jposet.size());
  for (int v = 0; v < jposet.size(); ++v)
    out.irreducible_element[v] = irr.label[(*iso)[v]];
  return out;
}

// A family of chain maps into a poset whose images cover it. Entries may be
// the adjoined bottom/top of the pointed extension; a cover with no such
// entries is a loose chain cover proper of the poset.
struct LooseChainCover {
  static constexpr int kBottom = -1;
  static constexpr int kTop = -2;

  Poset poset;
  std::vector<std::vector<int>> chains;  // chains[c][k] = image of level k+1

  LooseChainCover() = default;
  LooseChainCover(Poset p, std::vector<std::vector<int>> ch)
      : poset(std::move(p)), chains(std::move(ch)) {
    for (const auto& chain : chains) {
      if (chain.empty()) throw contract_error("chain cover: empty chain");
      for (int v : chain)
        if (v != kBottom && v != kTop && (v < 0 || v >= poset.size()))
          throw contract_error("chain cover: image out of range");
      for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        if (!pointed_leq(chain[k], chain[k + 1]))
          throw contract_error("chain cover: map is not order preserving");
    }
    std::vector<char> covered(poset.size(), 0);
    for (const auto& chain : chains)
      for (int v : chain)
        if (v >= 0) covered[v] = 1;
    for (int v = 0; v < poset.size(); ++v)
      if (!covered[v])
        throw contract_error("chain cover: images do not cover the poset");
  }

  bool pointed_leq(int a, int b) const {
    if (a == kBottom || b == kTop) return true;
    if (a == kTop) return b == kTop;
    if (b == kBottom) return a == kBottom;
    return poset.leq(a, b);
  }

  bool is_loose_cover() const {
    for (const auto& chain : chains)
      for (int v : chain)
        if (v < 0) return false;
    return true;
  }
  bool is_chain_cover() const {
    if (!is_loose_cover()) return false;
    for (const auto& chain : chains)
      for (std::size_t a = 0; a < chain.size(); ++a)
        for (std::size_t b = a + 1; b < chain.size(); ++b)
          if (chain[a] == chain[b]) return false;
    return true;
  }
  bool is_decomposition() const {
    if (!is_chain_cover()) return false;
    std::vector<char> used(poset.size(), 0);
    for (const auto& chain : chains)
      for (int v : chain)
        if (used[v]++) return false;
    return true;
  }

  bool operator==(const LooseChainCover& o) const {
    return poset == o.poset && chains == o.chains;
  }
};

// A poset together with its canonical downset lattice and, per vertex, the
// elements holding its principal downset and that downset minus the vertex.
struct DownsetPresentation {
  Poset poset;
  SetFamilyLattice downsets;
  std::vector<int> principal;
  std::vector<int> principal_lower;
};

inline DownsetPresentation make_downset_presentation(const Poset& p) {
  DownsetPresentation pres;
  pres.poset = p;
  pres.downsets = downset_lattice(p);
  pres.principal.resize(p.size());
  pres.principal_lower.resize(p.size());
  for (int v = 0; v < p.size(); ++v) {
    std::uint64_t down = 0;
    for (int u = 0; u < p.size(); ++u)
      if (p.geq(v, u)) down |= std::uint64_t{1} << u;
    pres.principal[v] = pres.downsets.index_of(down);
    pres.principal_lower[v] =
        pres.downsets.index_of(down & ~(std::uint64_t{1} << v));
    if (pres.principal[v] < 0 || pres.principal_lower[v] < 0)
      throw invariant_error("downset presentation: principal downset missing");
  }
  return pres;
}

// E(S) = join of the preimage of S (with the adjoined bottom): coordinate i
// counts the chain levels mapped into S or below it.
inline Embedding cover_to_embedding(const DownsetPresentation& pres,
                                    const LooseChainCover& cov) {
  std::vector<int> sizes;
  for (const auto& chain : cov.chains)
    sizes.push_back(static_cast<int>(chain.size()));
  ChainProduct target(sizes);
  Embedding e;
  e.source = pres.downsets.lattice;
  e.target = target;
  for (std::uint64_t s : pres.downsets.sets) {
    Tuple t(target.d(), 0);
    for (int c = 0; c < target.d(); ++c)
      for (int img : cov.chains[c]) {
        bool inside = img == LooseChainCover::kBottom ||
                      (img >= 0 && ((s >> img) & 1));
        if (inside) ++t[c];
      }
    e.image.push_back(std::move(t));
  }
  e.validate();
  return e;
}

inline Embedding cover_to_embedding(const LooseChainCover& cov) {
  return cover_to_embedding(make_downset_presentation(cov.poset), cov);
}

// phi_E by fibers: the preimage of a poset vertex is the symmetric
// difference of the terminal sets of its principal downset image and of
// that downset minus the vertex; what is below the bottom image maps to the
// adjoined bottom, what is missing from the top image to the adjoined top.
inline LooseChainCover embedding_to_cover(const DownsetPresentation& pres,
                                          const Embedding& e) {
  if (e.source.size() != pres.downsets.lattice.size())
    throw contract_error("embedding to cover: source does not match presentation");
  e.validate();
  const ChainProduct& p = e.target;
  PointedVertexLayout lay(p);
  auto tset = [&](int elem) { return map_T(p, e.image[elem]).members; };

  std::vector<int> vertex_image(lay.interior, LooseChainCover::kTop);
  std::uint64_t assigned = 0;
  std::uint64_t bottom_set = tset(e.source.bottom());
  for (int v = 0; v < lay.interior; ++v)
    if ((bottom_set >> v) & 1) {
      vertex_image[v] = LooseChainCover::kBottom;
      assigned |= std::uint64_t{1} << v;
    }
  for (int q = 0; q < pres.poset.size(); ++q) {
    std::uint64_t fiber =
        tset(pres.principal[q]) & ~tset(pres.principal_lower[q]);
    if (fiber == 0)
      throw invariant_error("embedding to cover: empty fiber");
    if (fiber & assigned)
      throw invariant_error("embedding to cover: fibers overlap");
    assigned |= fiber;
    for (int v = 0; v < lay.interior; ++v)
      if ((fiber >> v) & 1) vertex_image[v] = q;
  }
  std::uint64_t top_set = tset(e.source.top());
  for (int v = 0; v < lay.interior; ++v) {
    bool in_top = (top_set >> v) & 1;
    bool got = (assigned >> v) & 1;
    if (in_top != got)
      throw invariant_error("embedding to cover: fiber partition failed");
  }

  std::vector<std::vector<int>> chains(p.d());
  for (int i = 1; i <= p.d(); ++i)
    for (int level = 1; level <= p.sizes[i - 1]; ++level)
      chains[i - 1].push_back(vertex_image[lay.id(i, level)]);
  return LooseChainCover(pres.poset, std::move(chains));
}

// Standalone form: present the source through its own irreducibles.
inline LooseChainCover embedding_to_cover(const Embedding& e) {
  BirkhoffIso b = birkhoff_map(e.source);
  DownsetPresentation pres;
  pres.poset = b.irreducibles.carrier;
  pres.downsets = b.downsets;
  const int k = pres.poset.size();
  pres.principal.resize(k);
  pres.principal_lower.resize(k);
  for (int v = 0; v < k; ++v) {
    std::uint64_t down = 0;
    for (int u = 0; u < k; ++u)
      if (pres.poset.geq(v, u)) down |= std::uint64_t{1} << u;
    pres.principal[v] = pres.downsets.index_of(down);
    pres.principal_lower[v] =
        pres.downsets.index_of(down & ~(std::uint64_t{1} << v));
  }
  // re-index the embedding over the canonical downset lattice
  Embedding canon;
  canon.source = pres.downsets.lattice;
  canon.target = e.target;
  canon.image.resize(e.image.size());
  for (int x = 0; x < e.source.size(); ++x)
    canon.image[b.to_downset[x]] = e.image[x];
  return embedding_to_cover(pres, canon);
}

// All surjective pointed chain maps from the chains of the given sizes onto
// the pointed extension of the poset, in lexicographic order.
inline std::vector<LooseChainCover> enumerate_pointed_homs(
    const Poset& p, const std::vector<int>& sizes) {
  ChainProduct target(sizes);  // validates sizes
  const int n = p.size();
  // candidate values in enumeration order: bottom, vertices, top
  std::vector<int> values;
  values.push_back(LooseChainCover::kBottom);
  for (int v = 0; v < n; ++v) values.push_back(v);
  values.push_back(LooseChainCover::kTop);

  auto pointed_leq = [&](int a, int b) {
    if (a == LooseChainCover::kBottom || b == LooseChainCover::kTop) return true;
    if (a == LooseChainCover::kTop) return b == LooseChainCover::kTop;
    if (b == LooseChainCover::kBottom) return a == LooseChainCover::kBottom;
    return p.leq(a, b);
  };

  // monotone sequences per chain length, memoized by length
  std::map<int, std::vector<std::vector<int>>> seqs_by_len;
  auto seqs_for = [&](int len) -> const std::vector<std::vector<int>>& {
    auto it = seqs_by_len.find(len);
    if (it != seqs_by_len.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (int v : values) {
        if (!cur.empty() && !pointed_leq(cur.back(), v)) continue;
        cur.push_back(v);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    return seqs_by_len.emplace(len, std::move(out)).first->second;
  };

  std::vector<LooseChainCover> covers;
  std::vector<std::vector<int>> chosen(sizes.size());
  auto rec = [&](auto&& self, std::size_t c) -> void {
    if (c == sizes.size()) {
      std::vector<char> covered(n, 0);
      for (const auto& chain : chosen)
        for (int v : chain)
          if (v >= 0) covered[v] = 1;
      for (int v = 0; v < n; ++v)
        if (!covered[v]) return;
      covers.emplace_back(p, chosen);
      return;
    }
    for (const auto& seq : seqs_for(sizes[c])) {
      chosen[c] = seq;
      self(self, c + 1);
    }
  };
  rec(rec, 0);
  return covers;
}

// All embeddings of the downset lattice of the presentation's poset into the
// product, by backtracking over the images of the principal downsets.
// Incremental meet checks keep the search tree close to the result set.
inline std::vector<Embedding> enumerate_embeddings(
    const DownsetPresentation& pres, const ChainProduct& target) {
  const Poset& p = pres.poset;
  const int n = p.size();
  std::vector<int> order = p.linear_extension();
  std::vector<std::uint64_t> down(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (p.geq(v, u)) down[v] |= std::uint64_t{1} << u;

  std::vector<Embedding> found;
  std::vector<Tuple> v_img(n);       // image of each principal downset
  std::vector<char> have(n, 0);
  Tuple t0;                          // image of the empty downset

  auto join_over = [&](std::uint64_t mask) {
    Tuple t = t0;
    for (int r = 0; r < n; ++r)
      if ((mask >> r) & 1) t = target.tuple_join(t, v_img[r]);
    return t;
  };

  auto emit = [&]() {
    Embedding e;
    e.source = pres.downsets.lattice;
    e.target = target;
    for (std::uint64_t s : pres.downsets.sets) e.image.push_back(join_over(s));
    e.validate();
    found.push_back(std::move(e));
  };

  auto rec = [&](auto&& self, std::size_t step) -> void {
    if (step == order.size()) {
      emit();
      return;
    }
    int q = order[step];
    Tuple base = join_over(down[q] & ~(std::uint64_t{1} << q));
    // candidates: every tuple strictly above the base
    Tuple t = base;
    auto advance = [&]() {
      for (int i = target.d() - 1; i >= 0; --i) {
        if (t[i] < target.sizes[i]) {
          ++t[i];
          for (int k = i + 1; k < target.d(); ++k) t[k] = base[k];
          return true;
        }
        // exhausted this coordinate; carry
      }
      return false;
    };
    while (advance()) {
      if (t == base) continue;
      bool ok = true;
      for (std::size_t prev = 0; prev < step && ok; ++prev) {
        int r = order[prev];
        if ((down[q] >> r) & 1) continue;  // comparable, meet is automatic
        Tuple expected = join_over(down[q] & down[r]);
        if (target.tuple_meet(t, v_img[r]) != expected) ok = false;
      }
      if (!ok) continue;
      v_img[q] = t;
      have[q] = 1;
      self(self, step + 1);
      have[q] = 0;
    }
  };

  // iterate the image of the empty downset over all tuples
  long long c = target.element_count();
  for (long long e0 = 0; e0 < c; ++e0) {
    t0 = target.tuple_at(e0);
    rec(rec, 0);
  }
  std::sort(found.begin(), found.end(),
            [](const Embedding& a, const Embedding& b) { return a.image < b.image; });
  return found;
}

// Both sides of the correspondence over one poset and one target product,
// with the round trips and the classification alignment verified.
struct CorrespondenceResult {
  std::vector<LooseChainCover> covers;
  std::vector<Embedding> embeddings;
  std::vector<int> cover_to_embedding_index;
  std::vector<int> embedding_to_cover_index;
  int full_embeddings = 0, subdirect_embeddings = 0, tight_embeddings = 0;
  int loose_covers = 0, chain_covers = 0, decompositions = 0;
};

inline CorrespondenceResult enumerate_correspondence(const Poset& p,
                                                     const ChainProduct& target) {
  DownsetPresentation pres = make_downset_presentation(p);
  CorrespondenceResult res;
  res.covers = enumerate_pointed_homs(p, target.sizes);
  res.embeddings = enumerate_embeddings(pres, target);
  if (res.covers.size() != res.embeddings.size())
    throw invariant_error("correspondence: side counts differ");

  std::map<std::vector<Tuple>, int> emb_index;
  for (std::size_t k = 0; k < res.embeddings.size(); ++k)
    emb_index[res.embeddings[k].image] = static_cast<int>(k);
  std::map<std::vector<std::vector<int>>, int> cov_index;
  for (std::size_t k = 0; k < res.covers.size(); ++k)
    cov_index[res.covers[k].chains] = static_cast<int>(k);

  res.cover_to_embedding_index.assign(res.covers.size(), -1);
  res.embedding_to_cover_index.assign(res.embeddings.size(), -1);
  std::vector<char> emb_hit(res.embeddings.size(), 0);

  for (std::size_t k = 0; k < res.covers.size(); ++k) {
    Embedding e = cover_to_embedding(pres, res.covers[k]);
    auto it = emb_index.find(e.image);
    if (it == emb_index.end())
      throw invariant_error("correspondence: cover image is not an enumerated embedding");
    if (emb_hit[it->second]++)
      throw invariant_error("correspondence: two covers give one embedding");
    res.cover_to_embedding_index[k] = it->second;
    // round trip through the fibers
    LooseChainCover back = embedding_to_cover(pres, e);
    if (!(back == res.covers[k]))
      throw invariant_error("correspondence: cover round trip failed");
  }
  for (std::size_t k = 0; k < res.embeddings.size(); ++k) {
    LooseChainCover cov = embedding_to_cover(pres, res.embeddings[k]);
    auto it = cov_index.find(cov.chains);
    if (it == cov_index.end())
      throw invariant_error("correspondence: embedding fiber map is not an enumerated cover");
    res.embedding_to_cover_index[k] = it->second;
    Embedding back = cover_to_embedding(pres, cov);
    if (back.image != res.embeddings[k].image)
      throw invariant_error("correspondence: embedding round trip failed");
    if (res.cover_to_embedding_index[it->second] != static_cast<int>(k))
      throw invariant_error("correspondence: pairing is not mutual");
  }

  for (std::size_t k = 0; k < res.embeddings.size(); ++k) {
    Classification c =
        classify(target, res.embeddings[k].image_sublattice());
    const LooseChainCover& cov = res.covers[res.embedding_to_cover_index[k]];
    bool loose = cov.is_loose_cover();
    bool chain = cov.is_chain_cover();
    bool dec = cov.is_decomposition();
    if (c.full != loose || c.subdirect != chain || c.tight != dec)
      throw invariant_error("correspondence: classification strata misaligned");
    res.full_embeddings += c.full;
    res.subdirect_embeddings += c.subdirect;
    res.tight_embeddings += c.tight;
    res.loose_covers += loose;
    res.chain_covers += chain;
    res.decompositions += dec;
  }
  return res;
}

// Maximum-sized independent sets as a lattice, built along the proof of its
// distributivity: prune arcs whose removal keeps the dependence relation,
// restrict the reachability order to the cycle-free vertices, decompose it
// into chains, and embed each maximum independent set by chain positions.
inline SetFamilyLattice max_independent_lattice(const Digraph& a) {
  detail::check_mask_capacity(a, "max independent lattice");
  const int n = a.size();

  // symmetrized non-trivial reachability, diagonal included
  auto dependence = [](const Digraph& g) {
    Digraph r = nontrivial_reach(g);
    std::vector<std::uint64_t> dep(g.size(), 0);
    for (int u = 0; u < g.size(); ++u)
      for (int v = 0; v < g.size(); ++v)
        if (r.has_arc(u, v) || r.has_arc(v, u))
          dep[u] |= std::uint64_t{1} << v;
    return dep;
  };

  Digraph pruned = a;
  std::vector<std::uint64_t> dep = dependence(pruned);
  bool changed = true;
  while (changed) {
    changed = false;
    Digraph reach = nontrivial_reach(pruned);
    for (auto [u, v] : pruned.arcs()) {
      if (!pruned.has_arc(u, v)) continue;  // dropped earlier in this sweep
      bool on_cycle = (u == v) || reach.has_arc(v, u);
      if (!on_cycle) continue;
      Digraph trial = pruned;
      trial.remove_arc(u, v);
      if (dependence(trial) == dep) {
        pruned = trial;
        reach = nontrivial_reach(pruned);
        changed = true;
      }
    }
  }

  Digraph r = nontrivial_reach(pruned);
  std::vector<int> ok;
  for (int v = 0; v < n; ++v)
    if (!r.has_arc(v, v)) ok.push_back(v);
  if (ok.empty())
    throw domain_error("max independent lattice: no independent sets");
  Digraph q(static_cast<int>(ok.size()));
  for (std::size_t x = 0; x < ok.size(); ++x) {
    q.add_arc(static_cast<int>(x), static_cast<int>(x));
    for (std::size_t y = 0; y < ok.size(); ++y)
      if (x != y && r.has_arc(ok[x], ok[y]))
        q.add_arc(static_cast<int>(x), static_cast<int>(y));
  }
  Poset qp(std::move(q));

  const int d = poset_width(qp);
  if (d != width(a))
    throw invariant_error("max independent lattice: pruning changed the width");
  IndependentSetPoset ind = independent_sets_d(a, d);

  std::vector<std::vector<int>> chains = dilworth_decompose(qp);
  std::vector<int> chain_of(ok.size()), pos_of(ok.size());
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (std::size_t k = 0; k < chains[c].size(); ++k) {
      chain_of[chains[c][k]] = static_cast<int>(c);
      pos_of[chains[c][k]] = static_cast<int>(k);
    }
  std::vector<int> q_index(n, -1);
  for (std::size_t x = 0; x < ok.size(); ++x) q_index[ok[x]] = static_cast<int>(x);

  // embed: every maximum independent set hits each chain exactly once
  std::vector<Tuple> tuples;
  for (std::uint64_t s : ind.sets) {
    Tuple t(chains.size(), -1);
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1) {
        int qx = q_index[v];
        if (qx < 0 || t[chain_of[qx]] >= 0)
          throw invariant_error("max independent lattice: chain hit twice");
        t[chain_of[qx]] = pos_of[qx];
      }
    for (int c : t)
      if (c < 0) throw invariant_error("max independent lattice: chain missed");
    tuples.push_back(std::move(t));
  }

  auto tuple_leq = [&](const Tuple& x, const Tuple& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  // closure under coordinatewise min/max, and agreement with the
  // reachability order on independent sets
  const int m = static_cast<int>(tuples.size());
  Digraph g(m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (tuple_leq(tuples[y], tuples[x])) g.add_arc(x, y);
      if (ind.order.geq(x, y) != tuple_leq(tuples[y], tuples[x]))
        throw invariant_error(
            "max independent lattice: embedded order differs from reachability");
    }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      Tuple lo(tuples[x].size()), hi(tuples[x].size());
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::min(tuples[x][i], tuples[y][i]);
        hi[i] = std::max(tuples[x][i], tuples[y][i]);
      }
      if (std::find(tuples.begin(), tuples.end(), lo) == tuples.end() ||
          std::find(tuples.begin(), tuples.end(), hi) == tuples.end())
        throw invariant_error("max independent lattice: image is not a sublattice");
    }
  Lattice l = Lattice::from_order(Poset(std::move(g)));
  if (!is_distributive(l))
    throw invariant_error("max independent lattice: result is not distributive");
  return {std::move(l), ind.sets, n};
}

}  // namespace latrep
