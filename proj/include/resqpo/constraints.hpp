#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "resqpo/cat_ops.hpp"
#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/matching.hpp"
#include "resqpo/morphism.hpp"

namespace resqpo {

/// A global negative constraint: the conjunction of "no mono from N" over a
/// set of forbidden patterns N. Patterns are non-empty and pairwise
/// non-isomorphic; duplicates up to isomorphism are dropped on construction.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  explicit ConstraintSet(const std::vector<Graph>& patterns) {
    for (const Graph& p : patterns) {
      if (!p.valid()) throw format_error("invalid forbidden pattern");
      if (p.empty()) throw precondition_error("a forbidden pattern must not be the empty graph");
      const bool dup = std::any_of(patterns_.begin(), patterns_.end(), [&](const Graph& q) { return isomorphic(p, q); });
      if (!dup) patterns_.push_back(p);
    }
  }

  const std::vector<Graph>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }

 private:
  std::vector<Graph> patterns_;
};

/// True iff no forbidden pattern of c embeds into g.
inline bool satisfies(const Graph& g, const ConstraintSet& c) {
  return std::none_of(c.patterns().begin(), c.patterns().end(), [&](const Graph& p) { return exists_mono(p, g); });
}

/// The four patterns defining rigid multigraphs: parallel edges, two edges
/// out of one vertex, two edges into one vertex, and parallel self-loops.
inline ConstraintSet rigid_constraints() {
  return ConstraintSet({
      Graph({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}}),
      Graph({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "a", "c"}}),
      Graph({"a", "b", "c"}, {{"e1", "a", "c"}, {"e2", "b", "c"}}),
      Graph({"a"}, {{"l1", "a", "a"}, {"l2", "a", "a"}}),
  });
}

/// A monic span C1 <- D -> C2 of constraint-satisfying graphs whose pushout
/// is the forbidden pattern with index `pattern`.
struct ForbiddenRelation {
  MonicSpan span;  // left: D -> C1, right: D -> C2
  std::size_t pattern = 0;

  const Graph& c1() const { return span.left.target(); }
  const Graph& c2() const { return span.right.target(); }
  const Graph& d() const { return span.apex(); }
  std::size_t size() const {
    return c1().vertex_count() + c1().edge_count() + c2().vertex_count() + c2().edge_count();
  }
};

struct ForbiddenRelationSet {
  std::vector<ForbiddenRelation> relations;
  ConstraintSet source;
};

namespace detail {

// PartialMap on the codomain of `from` (D -> X) that pins each from(z) to
// to(z), where to: D -> Y. Used to extend a known apex map to a leg map.
inline PartialMap pin_through(const Morphism& from, const Morphism& to) {
  PartialMap fixed = PartialMap::free_for(from.target());
  for (std::size_t z = 0; z < from.source().vertex_count(); ++z) fixed.vmap[from.vertex(z)] = to.vertex(z);
  for (std::size_t z = 0; z < from.source().edge_count(); ++z) fixed.emap[from.edge(z)] = to.edge(z);
  return fixed;
}

// Is there an iso of spans (l: D -> X, r: D -> Y) ~ (l2: D2 -> X2, r2: D2 -> Y2)?
inline bool spans_isomorphic(const Morphism& l, const Morphism& r, const Morphism& l2, const Morphism& r2) {
  if (!same_shape(l.target(), l2.target()) || !same_shape(r.target(), r2.target())) return false;
  for (const Morphism& apex_iso : enumerate_isomorphisms(l.source(), l2.source())) {
    const Morphism via_l = compose(l2, apex_iso);
    const Morphism via_r = compose(r2, apex_iso);
    PartialMap fl = pin_through(l, via_l);
    PartialMap fr = pin_through(r, via_r);
    if (find_isomorphism(l.target(), l2.target(), &fl) && find_isomorphism(r.target(), r2.target(), &fr)) return true;
  }
  return false;
}

// Pullback embeddings of (X <-x- D) into (A <-m- M): monos h: X -> A with
// every element of h(x(D)) in the image of m, and no other element of h(X)
// in that image. The induced d: D -> M is then the unique map with
// m . d = h . x, and the square is a pullback. Visitor:
// bool(const Morphism& h, const Morphism& d); return false to stop.
template <class Visitor>
bool for_each_pullback_embedding(const Morphism& x, const Morphism& m, Visitor&& visit,
                                 const PartialMap* fixed = nullptr) {
  const Graph& xg = x.target();
  const Graph& a = m.target();
  const auto minv_v = m.vertex_preimage(), minv_e = m.edge_preimage();
  const std::size_t dv = x.source().vertex_count(), de = x.source().edge_count();
  return for_each_mono(
      xg, a,
      [&](const std::vector<std::size_t>& hv, const std::vector<std::size_t>& he) {
        std::size_t hit_v = 0, hit_e = 0;
        for (std::size_t v : hv) hit_v += minv_v[v] != npos;
        for (std::size_t e : he) hit_e += minv_e[e] != npos;
        if (hit_v != dv || hit_e != de) return true;
        std::vector<std::size_t> d_v(dv), d_e(de);
        for (std::size_t z = 0; z < dv; ++z)
          if ((d_v[z] = minv_v[hv[x.vertex(z)]]) == npos) return true;
        for (std::size_t z = 0; z < de; ++z)
          if ((d_e[z] = minv_e[he[x.edge(z)]]) == npos) return true;
        return visit(Morphism(xg, a, hv, he), Morphism(x.source(), m.source(), std::move(d_v), std::move(d_e)));
      },
      fixed);
}

}  // namespace detail

/// The forbidden relations of c: for every pattern N, each pair of
/// constraint-satisfying subgraphs C1, C2 covering N with intersection D
/// (also constraint-satisfying), one representative per span isomorphism
/// class, where a span and its mirror image count as the same class.
/// Relations are ordered by increasing |C1| + |C2|.
inline ForbiddenRelationSet decompose_forbidden_relations(const ConstraintSet& c) {
  ForbiddenRelationSet out;
  out.source = c;
  for (std::size_t k = 0; k < c.patterns().size(); ++k) {
    const Graph& n = c.patterns()[k];
    const std::size_t nv = n.vertex_count(), ne = n.edge_count();
    const std::size_t all_e = (std::size_t{1} << ne) - 1, all_v = (std::size_t{1} << nv) - 1;
    auto ends = [&](std::size_t emask) {
      std::size_t m = 0;
      for (std::size_t e = 0; e < ne; ++e)
        if (emask >> e & 1) m |= (std::size_t{1} << n.source(e)) | (std::size_t{1} << n.target(e));
      return m;
    };
    auto sub = [&](std::size_t vmask, std::size_t emask) {
      std::vector<bool> kv(nv), ke(ne);
      for (std::size_t v = 0; v < nv; ++v) kv[v] = vmask >> v & 1;
      for (std::size_t e = 0; e < ne; ++e) ke[e] = emask >> e & 1;
      return detail::subgraph(n, kv, ke);
    };
    for (std::size_t e1 = 0; e1 <= all_e; ++e1) {
      // C2 must contain every edge C1 misses.
      const std::size_t rest = all_e & ~e1;
      for (std::size_t extra = e1;; extra = (extra - 1) & e1) {
        const std::size_t e2 = rest | extra;
        const std::size_t need1 = ends(e1), need2 = ends(e2);
        for (std::size_t v1 = need1; v1 <= all_v; v1 = (v1 + 1) | need1) {
          // C2 covers every vertex C1 misses.
          const std::size_t base2 = need2 | (all_v & ~v1);
          for (std::size_t add = v1 & ~base2;; add = (add - 1) & (v1 & ~base2)) {
            const std::size_t v2 = base2 | add;
            auto [g1, i1] = sub(v1, e1);
            auto [g2, i2] = sub(v2, e2);
            auto [gd, id] = sub(v1 & v2, e1 & e2);
            if (satisfies(g1, c) && satisfies(g2, c) && satisfies(gd, c)) {
              // D -> C1 and D -> C2 as inclusions.
              auto restrict_to = [&](const Morphism& into_n) {
                std::vector<std::size_t> vm, em;
                const auto inv_v = into_n.vertex_preimage(), inv_e = into_n.edge_preimage();
                for (std::size_t v : id.vmap()) vm.push_back(inv_v[v]);
                for (std::size_t e : id.emap()) em.push_back(inv_e[e]);
                return Morphism(gd, into_n.source(), vm, em);
              };
              ForbiddenRelation rel{MonicSpan(restrict_to(i1), restrict_to(i2)), k};
              if (!isomorphic(pushout(rel.span).graph, n))
                throw std::logic_error("forbidden relation does not glue back to its pattern");
              const bool dup = std::any_of(out.relations.begin(), out.relations.end(), [&](const ForbiddenRelation& r) {
                return detail::spans_isomorphic(rel.span.left, rel.span.right, r.span.left, r.span.right) ||
                       detail::spans_isomorphic(rel.span.right, rel.span.left, r.span.left, r.span.right);
              });
              if (!dup) out.relations.push_back(std::move(rel));
            }
            if (add == 0) break;
          }
          if (v1 == all_v) break;
        }
        if (extra == 0) break;
      }
    }
  }
  std::stable_sort(out.relations.begin(), out.relations.end(),
                   [](const ForbiddenRelation& a, const ForbiddenRelation& b) { return a.size() < b.size(); });
  return out;
}

/// A double-pullback embedding of a forbidden relation into an overlap span
/// A <- M -> B: monos into_left: C_A -> A, apex: D -> M, into_right: C_B -> B,
/// with both squares over M pullbacks. `mirrored` says the relation's C2
/// side was embedded into A.
struct DpeWitness {
  std::size_t relation = 0;
  bool mirrored = false;
  Morphism into_left;
  Morphism apex;
  Morphism into_right;
};

/// Searches for a double-pullback embedding of any relation of s into the
/// span A <- M -> B (relations in increasing size, both orientations).
/// By the forbidden-relation decomposition, one exists iff the pushout of
/// the span violates s.source, provided A and B satisfy it.
inline std::optional<DpeWitness> find_dpe(const MonicSpan& mu, const ForbiddenRelationSet& s) {
  std::optional<DpeWitness> found;
  for (std::size_t r = 0; r < s.relations.size() && !found; ++r) {
    const ForbiddenRelation& rel = s.relations[r];
    for (int orient = 0; orient < 2 && !found; ++orient) {
      const Morphism& to_a = orient == 0 ? rel.span.left : rel.span.right;
      const Morphism& to_b = orient == 0 ? rel.span.right : rel.span.left;
      detail::for_each_pullback_embedding(to_a, mu.left, [&](const Morphism& h_a, const Morphism& d) {
        PartialMap pinned = detail::pin_through(to_b, compose(mu.right, d));
        detail::for_each_pullback_embedding(
            to_b, mu.right,
            [&](const Morphism& h_b, const Morphism& d_b) {
              if (!(d_b == d)) return true;
              found = DpeWitness{r, orient == 1, h_a, d, h_b};
              return false;
            },
            &pinned);
        return !found;
      });
    }
  }
  return found;
}

inline bool has_dpe(const MonicSpan& mu, const ForbiddenRelationSet& s) { return find_dpe(mu, s).has_value(); }

}  // namespace resqpo
