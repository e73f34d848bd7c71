#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/morphism.hpp"

namespace resqpo {

/// Commutative square
///
///     D --d_to_b--> B
///     |             |
///   d_to_a        b_to_p
///     v             v
///     A --a_to_p--> P
struct Square {
  Morphism d_to_a;
  Morphism d_to_b;
  Morphism a_to_p;
  Morphism b_to_p;

  bool commutes() const {
    return d_to_a.target() == a_to_p.source() && d_to_b.target() == b_to_p.source() &&
           a_to_p.target() == b_to_p.target() && compose(a_to_p, d_to_a) == compose(b_to_p, d_to_b);
  }
};

/// Result of a complement construction K -> K' -> N.
struct Complement {
  Graph graph;
  Morphism from_interface;  // K -> K'
  Morphism into_host;       // K' -> N
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Quotient of A + B by the equivalence generated by f(d) ~ g(d). Works for
// arbitrary spans; for monic spans every class has at most one element from
// each side. Class ids: "a:<x>" / "b:<y>" for singletons, "q:<xs>|<ys>"
// for glued classes.
inline GluedGraph glue(const Morphism& f, const Morphism& g) {
  const Graph& a = f.target();
  const Graph& b = g.target();
  const std::size_t nav = a.vertex_count(), nbv = b.vertex_count();
  const std::size_t nae = a.edge_count(), nbe = b.edge_count();
  UnionFind uv(nav + nbv), ue(nae + nbe);
  for (std::size_t d = 0; d < f.source().vertex_count(); ++d) uv.unite(f.vertex(d), nav + g.vertex(d));
  for (std::size_t d = 0; d < f.source().edge_count(); ++d) ue.unite(f.edge(d), nae + g.edge(d));

  auto class_names = [](UnionFind& uf, std::size_t na, std::size_t total, auto&& name_of) {
    std::vector<std::vector<std::size_t>> members(total);
    for (std::size_t x = 0; x < total; ++x) members[uf.find(x)].push_back(x);
    std::vector<std::string> names(total);
    for (std::size_t r = 0; r < total; ++r) {
      const auto& m = members[r];
      if (m.empty()) continue;
      std::string id;
      if (m.size() == 1) {
        id = (m[0] < na ? "a:" : "b:") + name_of(m[0]);
      } else {
        std::string left, right;
        for (std::size_t x : m) {
          std::string& side = x < na ? left : right;
          if (!side.empty()) side += ",";
          side += name_of(x);
        }
        id = "q:" + left + "|" + right;
      }
      names[r] = std::move(id);
    }
    return names;
  };
  auto vname = [&](std::size_t x) { return x < nav ? a.vertex_id(x) : b.vertex_id(x - nav); };
  auto ename = [&](std::size_t x) { return x < nae ? a.edge(x).id : b.edge(x - nae).id; };
  const auto vnames = class_names(uv, nav, nav + nbv, vname);
  const auto enames = class_names(ue, nae, nae + nbe, ename);

  std::vector<std::string> vs;
  for (std::size_t r = 0; r < nav + nbv; ++r)
    if (uv.find(r) == r) vs.push_back(vnames[r]);
  std::vector<Edge> es;
  for (std::size_t r = 0; r < nae + nbe; ++r) {
    if (ue.find(r) != r) continue;
    const std::size_t s = r < nae ? a.source(r) : nav + b.source(r - nae);
    const std::size_t t = r < nae ? a.target(r) : nav + b.target(r - nae);
    es.push_back({enames[r], vnames[uv.find(s)], vnames[uv.find(t)]});
  }
  Graph p(std::move(vs), std::move(es));

  std::vector<std::size_t> av(nav), ae(nae), bv(nbv), be(nbe);
  for (std::size_t x = 0; x < nav; ++x) av[x] = *p.vertex_index(vnames[uv.find(x)]);
  for (std::size_t x = 0; x < nbv; ++x) bv[x] = *p.vertex_index(vnames[uv.find(nav + x)]);
  for (std::size_t x = 0; x < nae; ++x) ae[x] = *p.edge_index(enames[ue.find(x)]);
  for (std::size_t x = 0; x < nbe; ++x) be[x] = *p.edge_index(enames[ue.find(nae + x)]);
  return {p, Morphism(a, p, std::move(av), std::move(ae)), Morphism(b, p, std::move(bv), std::move(be))};
}

// Subgraph of g keeping the flagged elements, with its inclusion into g.
// Every kept edge must have kept endpoints.
inline std::pair<Graph, Morphism> subgraph(const Graph& g, const std::vector<bool>& keep_v,
                                           const std::vector<bool>& keep_e) {
  std::vector<std::string> vs;
  std::vector<std::size_t> vmap;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (keep_v[v]) vs.push_back(g.vertex_id(v)), vmap.push_back(v);
  std::vector<Edge> es;
  std::vector<std::size_t> emap;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (keep_e[e]) es.push_back(g.edge(e)), emap.push_back(e);
  Graph s(std::move(vs), std::move(es));
  return {s, Morphism(s, g, std::move(vmap), std::move(emap))};
}

inline void require_monic(const Morphism& m, const char* what) {
  if (!m.is_monic()) throw precondition_error(std::string(what) + ": input morphism is not monic");
}

inline void require_composable(const Morphism& first, const Morphism& second, const char* what) {
  if (!(first.target() == second.source()))
    throw std::invalid_argument(std::string(what) + ": morphisms are not composable");
}

}  // namespace detail

/// Pushout of a monic span A <- D -> B: the quotient of A + B identifying
/// the two images of each apex element. Both result legs are monic.
inline GluedGraph pushout(const MonicSpan& span) { return detail::glue(span.left, span.right); }

/// Pullback of a cospan of monos A -> C <- B: the intersection of the two
/// images inside C (ids taken from C), with its projections.
inline GluedGraph pullback(const Cospan& cospan) {
  detail::require_monic(cospan.left, "pullback");
  detail::require_monic(cospan.right, "pullback");
  const Graph& c = cospan.left.target();
  const auto inv_a_v = cospan.left.vertex_preimage(), inv_b_v = cospan.right.vertex_preimage();
  const auto inv_a_e = cospan.left.edge_preimage(), inv_b_e = cospan.right.edge_preimage();
  std::vector<bool> keep_v(c.vertex_count()), keep_e(c.edge_count());
  for (std::size_t v = 0; v < c.vertex_count(); ++v) keep_v[v] = inv_a_v[v] != npos && inv_b_v[v] != npos;
  for (std::size_t e = 0; e < c.edge_count(); ++e) keep_e[e] = inv_a_e[e] != npos && inv_b_e[e] != npos;
  auto [d, incl] = detail::subgraph(c, keep_v, keep_e);
  std::vector<std::size_t> av, ae, bv, be;
  for (std::size_t v : incl.vmap()) av.push_back(inv_a_v[v]), bv.push_back(inv_b_v[v]);
  for (std::size_t e : incl.emap()) ae.push_back(inv_a_e[e]), be.push_back(inv_b_e[e]);
  return {d, Morphism(d, cospan.left.source(), std::move(av), std::move(ae)),
          Morphism(d, cospan.right.source(), std::move(bv), std::move(be))};
}

/// Pushout complement of K -> O -> N along monos: N minus the image of
/// O \ K. Returns nullopt when an edge of N outside the image of O is
/// incident to a deleted vertex (dangling condition).
inline std::optional<Complement> pushout_complement(const Morphism& k_to_o, const Morphism& o_to_n) {
  detail::require_monic(k_to_o, "pushout_complement");
  detail::require_monic(o_to_n, "pushout_complement");
  detail::require_composable(k_to_o, o_to_n, "pushout_complement");
  const Graph& o = o_to_n.source();
  const Graph& n = o_to_n.target();
  const auto in_k_v = k_to_o.vertex_preimage(), in_k_e = k_to_o.edge_preimage();
  std::vector<bool> keep_v(n.vertex_count(), true), keep_e(n.edge_count(), true);
  for (std::size_t v = 0; v < o.vertex_count(); ++v)
    if (in_k_v[v] == npos) keep_v[o_to_n.vertex(v)] = false;
  for (std::size_t e = 0; e < o.edge_count(); ++e)
    if (in_k_e[e] == npos) keep_e[o_to_n.edge(e)] = false;
  for (std::size_t e = 0; e < n.edge_count(); ++e) {
    if (!keep_e[e]) continue;
    // A retained edge from K keeps its endpoints, so this one lies outside
    // the image of O and would dangle.
    if (!keep_v[n.source(e)] || !keep_v[n.target(e)]) return std::nullopt;
  }
  auto [kp, incl] = detail::subgraph(n, keep_v, keep_e);
  const auto inv_v = incl.vertex_preimage(), inv_e = incl.edge_preimage();
  const Morphism k_to_n = compose(o_to_n, k_to_o);
  std::vector<std::size_t> kv, ke;
  for (std::size_t v : k_to_n.vmap()) kv.push_back(inv_v[v]);
  for (std::size_t e : k_to_n.emap()) ke.push_back(inv_e[e]);
  return Complement{kp, Morphism(k_to_o.source(), kp, std::move(kv), std::move(ke)), incl};
}

/// Final pullback complement of K -> I -> X along monos: X minus the image
/// of I \ K minus every edge incident to a deleted vertex. Always exists.
inline Complement final_pullback_complement(const Morphism& k_to_i, const Morphism& i_to_x) {
  detail::require_monic(k_to_i, "final_pullback_complement");
  detail::require_monic(i_to_x, "final_pullback_complement");
  detail::require_composable(k_to_i, i_to_x, "final_pullback_complement");
  const Graph& i = i_to_x.source();
  const Graph& x = i_to_x.target();
  const auto in_k_v = k_to_i.vertex_preimage(), in_k_e = k_to_i.edge_preimage();
  std::vector<bool> keep_v(x.vertex_count(), true), keep_e(x.edge_count(), true);
  for (std::size_t v = 0; v < i.vertex_count(); ++v)
    if (in_k_v[v] == npos) keep_v[i_to_x.vertex(v)] = false;
  for (std::size_t e = 0; e < i.edge_count(); ++e)
    if (in_k_e[e] == npos) keep_e[i_to_x.edge(e)] = false;
  for (std::size_t e = 0; e < x.edge_count(); ++e)
    if (!keep_v[x.source(e)] || !keep_v[x.target(e)]) keep_e[e] = false;
  auto [xbar, incl] = detail::subgraph(x, keep_v, keep_e);
  const auto inv_v = incl.vertex_preimage(), inv_e = incl.edge_preimage();
  const Morphism k_to_x = compose(i_to_x, k_to_i);
  std::vector<std::size_t> kv, ke;
  for (std::size_t v : k_to_x.vmap()) kv.push_back(inv_v[v]);
  for (std::size_t e : k_to_x.emap()) ke.push_back(inv_e[e]);
  return Complement{xbar, Morphism(k_to_i.source(), xbar, std::move(kv), std::move(ke)), incl};
}

/// True iff the square is a pushout: the canonical comparison from the
/// constructed quotient to the corner P is an isomorphism. Throws if the
/// square does not commute.
inline bool is_pushout_square(const Square& sq) {
  if (!sq.commutes()) throw std::invalid_argument("is_pushout_square: square does not commute");
  const GluedGraph canon = detail::glue(sq.d_to_a, sq.d_to_b);
  const Graph& p = sq.a_to_p.target();
  std::vector<std::size_t> uv(canon.graph.vertex_count(), npos), ue(canon.graph.edge_count(), npos);
  auto assign = [](std::vector<std::size_t>& m, std::size_t from, std::size_t to) {
    if (m[from] != npos && m[from] != to) return false;
    m[from] = to;
    return true;
  };
  for (std::size_t v = 0; v < sq.a_to_p.source().vertex_count(); ++v)
    if (!assign(uv, canon.from_left.vertex(v), sq.a_to_p.vertex(v))) return false;
  for (std::size_t v = 0; v < sq.b_to_p.source().vertex_count(); ++v)
    if (!assign(uv, canon.from_right.vertex(v), sq.b_to_p.vertex(v))) return false;
  for (std::size_t e = 0; e < sq.a_to_p.source().edge_count(); ++e)
    if (!assign(ue, canon.from_left.edge(e), sq.a_to_p.edge(e))) return false;
  for (std::size_t e = 0; e < sq.b_to_p.source().edge_count(); ++e)
    if (!assign(ue, canon.from_right.edge(e), sq.b_to_p.edge(e))) return false;
  if (canon.graph.vertex_count() != p.vertex_count() || canon.graph.edge_count() != p.edge_count()) return false;
  return Morphism(canon.graph, p, uv, ue).is_iso();
}

/// True iff the square is a pullback: the canonical comparison from the
/// corner D to the pullback object (pairs agreeing in P) is an isomorphism.
/// Throws if the square does not commute.
inline bool is_pullback_square(const Square& sq) {
  if (!sq.commutes()) throw std::invalid_argument("is_pullback_square: square does not commute");
  const Morphism& f = sq.a_to_p;
  const Morphism& g = sq.b_to_p;
  const Graph& d = sq.d_to_a.source();
  // Pairs (a, b) with f(a) = g(b), for vertices and for edges.
  std::size_t pair_v = 0, pair_e = 0;
  for (std::size_t a = 0; a < f.source().vertex_count(); ++a)
    for (std::size_t b = 0; b < g.source().vertex_count(); ++b) pair_v += f.vertex(a) == g.vertex(b);
  for (std::size_t a = 0; a < f.source().edge_count(); ++a)
    for (std::size_t b = 0; b < g.source().edge_count(); ++b) pair_e += f.edge(a) == g.edge(b);
  if (d.vertex_count() != pair_v || d.edge_count() != pair_e) return false;
  // Same cardinality, so the comparison d -> (d_to_a(d), d_to_b(d)) is an iso
  // iff it is injective.
  std::set<std::pair<std::size_t, std::size_t>> seen_v, seen_e;
  for (std::size_t x = 0; x < d.vertex_count(); ++x)
    if (!seen_v.insert({sq.d_to_a.vertex(x), sq.d_to_b.vertex(x)}).second) return false;
  for (std::size_t x = 0; x < d.edge_count(); ++x)
    if (!seen_e.insert({sq.d_to_a.edge(x), sq.d_to_b.edge(x)}).second) return false;
  return true;
}

}  // namespace resqpo
