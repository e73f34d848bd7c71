#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"

namespace resqpo {

/// Total map between two graphs, stored as index vectors. Construction only
/// checks totality and ranges; whether the map is a homomorphism is a
/// separate question answered by is_homomorphism().
class Morphism {
 public:
  Morphism() = default;

  Morphism(Graph source, Graph target, std::vector<std::size_t> vmap, std::vector<std::size_t> emap)
      : source_(std::move(source)), target_(std::move(target)), vmap_(std::move(vmap)), emap_(std::move(emap)) {
    if (vmap_.size() != source_.vertex_count() || emap_.size() != source_.edge_count())
      throw format_error("map not total");
    for (std::size_t v : vmap_)
      if (v >= target_.vertex_count()) throw format_error("map not total");
    for (std::size_t e : emap_)
      if (e >= target_.edge_count()) throw format_error("map not total");
  }

  /// Builds a morphism from id-keyed maps. Throws format_error("map not
  /// total") when a source id is missing or an id is unknown.
  static Morphism from_maps(Graph source, Graph target, const std::map<std::string, std::string>& vmap,
                            const std::map<std::string, std::string>& emap) {
    std::vector<std::size_t> vs(source.vertex_count(), npos);
    std::vector<std::size_t> es(source.edge_count(), npos);
    for (const auto& [from, to] : vmap) {
      auto a = source.vertex_index(from);
      auto b = target.vertex_index(to);
      if (!a || !b) throw format_error("map not total: unknown vertex '" + (a ? to : from) + "'");
      vs[*a] = *b;
    }
    for (const auto& [from, to] : emap) {
      auto a = source.edge_index(from);
      auto b = target.edge_index(to);
      if (!a || !b) throw format_error("map not total: unknown edge '" + (a ? to : from) + "'");
      es[*a] = *b;
    }
    return Morphism(std::move(source), std::move(target), std::move(vs), std::move(es));
  }

  static Morphism identity(const Graph& g) {
    std::vector<std::size_t> vs(g.vertex_count()), es(g.edge_count());
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = i;
    for (std::size_t i = 0; i < es.size(); ++i) es[i] = i;
    return Morphism(g, g, std::move(vs), std::move(es));
  }

  /// The unique morphism out of the empty graph.
  static Morphism initial(const Graph& target) { return Morphism(Graph(), target, {}, {}); }

  const Graph& source() const { return source_; }
  const Graph& target() const { return target_; }
  const std::vector<std::size_t>& vmap() const { return vmap_; }
  const std::vector<std::size_t>& emap() const { return emap_; }
  std::size_t vertex(std::size_t v) const { return vmap_[v]; }
  std::size_t edge(std::size_t e) const { return emap_[e]; }

  bool is_homomorphism() const {
    for (std::size_t e = 0; e < emap_.size(); ++e) {
      if (target_.source(emap_[e]) != vmap_[source_.source(e)]) return false;
      if (target_.target(emap_[e]) != vmap_[source_.target(e)]) return false;
    }
    return true;
  }

  bool is_injective() const { return injective(vmap_, target_.vertex_count()) && injective(emap_, target_.edge_count()); }
  bool is_surjective() const {
    return surjective(vmap_, target_.vertex_count()) && surjective(emap_, target_.edge_count());
  }
  bool is_monic() const { return is_homomorphism() && is_injective(); }
  bool is_iso() const { return is_monic() && is_surjective(); }

  /// Inverse lookup tables (target index -> source index or npos). Only
  /// meaningful for injective maps.
  std::vector<std::size_t> vertex_preimage() const { return invert(vmap_, target_.vertex_count()); }
  std::vector<std::size_t> edge_preimage() const { return invert(emap_, target_.edge_count()); }

  std::map<std::string, std::string> vmap_ids() const {
    std::map<std::string, std::string> m;
    for (std::size_t v = 0; v < vmap_.size(); ++v) m[source_.vertex_id(v)] = target_.vertex_id(vmap_[v]);
    return m;
  }
  std::map<std::string, std::string> emap_ids() const {
    std::map<std::string, std::string> m;
    for (std::size_t e = 0; e < emap_.size(); ++e) m[source_.edge(e).id] = target_.edge(emap_[e]).id;
    return m;
  }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.vmap_ == b.vmap_ && a.emap_ == b.emap_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  static bool injective(const std::vector<std::size_t>& m, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (std::size_t x : m) {
      if (seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }
  static bool surjective(const std::vector<std::size_t>& m, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (std::size_t x : m) seen[x] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  static std::vector<std::size_t> invert(const std::vector<std::size_t>& m, std::size_t n) {
    std::vector<std::size_t> inv(n, npos);
    for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = i;
    return inv;
  }

  Graph source_;
  Graph target_;
  std::vector<std::size_t> vmap_;
  std::vector<std::size_t> emap_;
};

inline bool is_homomorphism(const Morphism& m) { return m.is_homomorphism(); }

/// g after f. Throws if f's target is not g's source.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("compose: morphisms are not composable");
  std::vector<std::size_t> vs(f.vmap().size()), es(f.emap().size());
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = g.vertex(f.vertex(i));
  for (std::size_t i = 0; i < es.size(); ++i) es[i] = g.edge(f.edge(i));
  return Morphism(f.source(), g.target(), std::move(vs), std::move(es));
}

/// Two morphisms into a shared target graph.
struct Cospan {
  Morphism left;
  Morphism right;

  Cospan(Morphism l, Morphism r) : left(std::move(l)), right(std::move(r)) {
    if (!(left.target() == right.target())) throw std::invalid_argument("cospan legs must share their target");
  }
};

/// Two monomorphisms out of a shared apex: left D -> A, right D -> B.
struct MonicSpan {
  Morphism left;
  Morphism right;

  MonicSpan() = default;
  MonicSpan(Morphism l, Morphism r) : left(std::move(l)), right(std::move(r)) {
    if (!(left.source() == right.source())) throw std::invalid_argument("span legs must share their source");
    if (!left.is_monic() || !right.is_monic()) throw precondition_error("span legs must be monic");
  }

  const Graph& apex() const { return left.source(); }
};

/// Result of a binary colimit-style construction: an object with its two
/// structure maps.
struct GluedGraph {
  Graph graph;
  Morphism from_left;
  Morphism from_right;
};

/// Disjoint union with deterministic fresh ids "a:<id>" and "b:<id>".
inline GluedGraph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (const auto& v : a.vertices()) vs.push_back("a:" + v);
  for (const auto& v : b.vertices()) vs.push_back("b:" + v);
  for (const auto& e : a.edges()) es.push_back({"a:" + e.id, "a:" + e.src, "a:" + e.tgt});
  for (const auto& e : b.edges()) es.push_back({"b:" + e.id, "b:" + e.src, "b:" + e.tgt});
  Graph u(std::move(vs), std::move(es));
  // "a:" sorts before "b:", so canonical order keeps a's block first.
  std::vector<std::size_t> av(a.vertex_count()), ae(a.edge_count()), bv(b.vertex_count()), be(b.edge_count());
  for (std::size_t i = 0; i < av.size(); ++i) av[i] = i;
  for (std::size_t i = 0; i < ae.size(); ++i) ae[i] = i;
  for (std::size_t i = 0; i < bv.size(); ++i) bv[i] = av.size() + i;
  for (std::size_t i = 0; i < be.size(); ++i) be[i] = ae.size() + i;
  return {u, Morphism(a, u, std::move(av), std::move(ae)), Morphism(b, u, std::move(bv), std::move(be))};
}

}  // namespace resqpo
