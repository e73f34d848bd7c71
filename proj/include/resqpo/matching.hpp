#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "resqpo/graph.hpp"
#include "resqpo/morphism.hpp"

namespace resqpo {

/// Partial pre-assignment for a mono search; npos marks a free element.
struct PartialMap {
  std::vector<std::size_t> vmap;
  std::vector<std::size_t> emap;

  static PartialMap free_for(const Graph& pattern) {
    return {std::vector<std::size_t>(pattern.vertex_count(), npos),
            std::vector<std::size_t>(pattern.edge_count(), npos)};
  }
};

namespace detail {

// Backtracking monomorphism search: pattern edges first (in an order that
// keeps each next edge adjacent to already-bound vertices when possible),
// then the remaining isolated pattern vertices.
class MonoMatcher {
 public:
  MonoMatcher(const Topology& pattern, const Topology& host) : p_(pattern), h_(host) {}

  // Visitor: bool(const std::vector<size_t>& vmap, const std::vector<size_t>& emap);
  // returning false stops the search. Returns false iff stopped early.
  template <class Visitor>
  bool run(Visitor&& visit, const std::vector<std::size_t>* fixed_v = nullptr,
           const std::vector<std::size_t>* fixed_e = nullptr) {
    if (p_.vertex_count > h_.vertex_count || p_.edge_count() > h_.edge_count()) return true;
    vmap_.assign(p_.vertex_count, npos);
    emap_.assign(p_.edge_count(), npos);
    vused_.assign(h_.vertex_count, false);
    eused_.assign(h_.edge_count(), false);
    if (!seed(fixed_v, fixed_e)) return true;
    plan();
    stopped_ = false;
    step_edge(0, visit);
    return !stopped_;
  }

 private:
  bool bind_vertex(std::size_t pv, std::size_t hv) {
    if (hv >= h_.vertex_count) return false;
    if (vmap_[pv] != npos) return vmap_[pv] == hv;
    if (vused_[hv]) return false;
    vmap_[pv] = hv;
    vused_[hv] = true;
    return true;
  }

  bool seed(const std::vector<std::size_t>* fixed_v, const std::vector<std::size_t>* fixed_e) {
    if (fixed_v)
      for (std::size_t v = 0; v < fixed_v->size(); ++v)
        if ((*fixed_v)[v] != npos && !bind_vertex(v, (*fixed_v)[v])) return false;
    if (fixed_e)
      for (std::size_t e = 0; e < fixed_e->size(); ++e) {
        const std::size_t he = (*fixed_e)[e];
        if (he == npos) continue;
        if (he >= h_.edge_count() || eused_[he]) return false;
        if (!bind_vertex(p_.src[e], h_.src[he]) || !bind_vertex(p_.tgt[e], h_.tgt[he])) return false;
        emap_[e] = he;
        eused_[he] = true;
      }
    return true;
  }

  void plan() {
    edge_order_.clear();
    vertex_order_.clear();
    std::vector<bool> touched(p_.vertex_count, false);
    for (std::size_t v = 0; v < p_.vertex_count; ++v) touched[v] = vmap_[v] != npos;
    std::vector<bool> placed(p_.edge_count(), false);
    for (std::size_t e = 0; e < p_.edge_count(); ++e) placed[e] = emap_[e] != npos;
    for (;;) {
      std::size_t best = npos;
      int best_score = -1;
      for (std::size_t e = 0; e < p_.edge_count(); ++e) {
        if (placed[e]) continue;
        const int score = int(touched[p_.src[e]]) + int(touched[p_.tgt[e]]);
        if (score > best_score) best = e, best_score = score;
      }
      if (best == npos) break;
      placed[best] = true;
      touched[p_.src[best]] = touched[p_.tgt[best]] = true;
      edge_order_.push_back(best);
    }
    for (std::size_t v = 0; v < p_.vertex_count; ++v)
      if (!touched[v]) vertex_order_.push_back(v);
  }

  template <class Visitor>
  void step_edge(std::size_t i, Visitor& visit) {
    if (i == edge_order_.size()) return step_vertex(0, visit);
    const std::size_t pe = edge_order_[i];
    const std::size_t s = p_.src[pe], t = p_.tgt[pe];
    auto try_edge = [&](std::size_t he) {
      if (eused_[he]) return;
      const std::size_t hs = h_.src[he], ht = h_.tgt[he];
      if ((s == t) != (hs == ht)) return;
      const bool new_s = vmap_[s] == npos;
      if (!bind_vertex(s, hs)) return;
      const bool new_t = vmap_[t] == npos;
      if (!bind_vertex(t, ht)) {
        if (new_s) vused_[hs] = false, vmap_[s] = npos;
        return;
      }
      emap_[pe] = he;
      eused_[he] = true;
      step_edge(i + 1, visit);
      eused_[he] = false;
      emap_[pe] = npos;
      if (new_t) vused_[ht] = false, vmap_[t] = npos;
      if (new_s) vused_[hs] = false, vmap_[s] = npos;
    };
    if (vmap_[s] != npos) {
      for (std::size_t he : h_.out[vmap_[s]]) {
        try_edge(he);
        if (stopped_) return;
      }
    } else if (vmap_[t] != npos) {
      for (std::size_t he : h_.in[vmap_[t]]) {
        try_edge(he);
        if (stopped_) return;
      }
    } else {
      for (std::size_t he = 0; he < h_.edge_count(); ++he) {
        try_edge(he);
        if (stopped_) return;
      }
    }
  }

  template <class Visitor>
  void step_vertex(std::size_t i, Visitor& visit) {
    if (i == vertex_order_.size()) {
      if (!visit(std::as_const(vmap_), std::as_const(emap_))) stopped_ = true;
      return;
    }
    const std::size_t pv = vertex_order_[i];
    for (std::size_t hv = 0; hv < h_.vertex_count && !stopped_; ++hv) {
      if (vused_[hv]) continue;
      vmap_[pv] = hv;
      vused_[hv] = true;
      step_vertex(i + 1, visit);
      vused_[hv] = false;
      vmap_[pv] = npos;
    }
  }

  const Topology& p_;
  const Topology& h_;
  std::vector<std::size_t> vmap_, emap_;
  std::vector<bool> vused_, eused_;
  std::vector<std::size_t> edge_order_, vertex_order_;
  bool stopped_ = false;
};

}  // namespace detail

/// Calls visit(vmap, emap) for every monomorphism pattern -> host that
/// extends `fixed` (if given). The visitor returns false to stop; the
/// function returns false iff it was stopped.
template <class Visitor>
bool for_each_mono(const Graph& pattern, const Graph& host, Visitor&& visit, const PartialMap* fixed = nullptr) {
  detail::MonoMatcher m(pattern.topology(), host.topology());
  return m.run(visit, fixed ? &fixed->vmap : nullptr, fixed ? &fixed->emap : nullptr);
}

inline bool exists_mono(const Graph& pattern, const Graph& host, const PartialMap* fixed = nullptr) {
  bool found = false;
  for_each_mono(pattern, host, [&](const auto&, const auto&) { return !(found = true); }, fixed);
  return found;
}

inline std::size_t count_monos(const Graph& pattern, const Graph& host, const PartialMap* fixed = nullptr) {
  std::size_t n = 0;
  for_each_mono(pattern, host, [&](const auto&, const auto&) { return ++n, true; }, fixed);
  return n;
}

/// All monomorphisms pattern -> host, each once, ordered lexicographically
/// by (vertex images, edge images) in canonical id order.
inline std::vector<Morphism> enumerate_monos(const Graph& pattern, const Graph& host,
                                             const PartialMap* fixed = nullptr) {
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> found;
  for_each_mono(
      pattern, host, [&](const auto& v, const auto& e) { return found.emplace_back(v, e), true; }, fixed);
  std::sort(found.begin(), found.end());
  std::vector<Morphism> out;
  out.reserve(found.size());
  for (auto& [v, e] : found) out.emplace_back(pattern, host, std::move(v), std::move(e));
  return out;
}

namespace detail {

// Sorted (in-degree, out-degree, self-loops) profile; equal profiles are
// necessary for isomorphism.
inline std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> degree_profile(const Graph& g) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> d(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::size_t loops = 0;
    for (std::size_t e : g.out_edges(v)) loops += g.target(e) == v;
    d[v] = {g.in_edges(v).size(), g.out_edges(v).size(), loops};
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline bool same_shape(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         degree_profile(a) == degree_profile(b);
}

}  // namespace detail

/// A bijective homomorphism a -> b extending `fixed`, if one exists.
inline std::optional<Morphism> find_isomorphism(const Graph& a, const Graph& b, const PartialMap* fixed = nullptr) {
  if (!detail::same_shape(a, b)) return std::nullopt;
  std::optional<Morphism> iso;
  for_each_mono(
      a, b,
      [&](const auto& v, const auto& e) {
        iso.emplace(a, b, v, e);
        return false;
      },
      fixed);
  return iso;
}

/// Every isomorphism a -> b extending `fixed`.
inline std::vector<Morphism> enumerate_isomorphisms(const Graph& a, const Graph& b,
                                                    const PartialMap* fixed = nullptr) {
  if (!detail::same_shape(a, b)) return {};
  return enumerate_monos(a, b, fixed);
}

inline bool isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace resqpo
