#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "resqpo/constraints.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/matching.hpp"

namespace resqpo {

namespace detail {

// Connected rigid graphs on m vertices: the path through all of them (a
// lone vertex when m = 1) and, for m >= 2, the cycle; with loops allowed,
// every way of putting at most one loop on each vertex, up to isomorphism.
inline std::vector<Graph> rigid_components(std::size_t m, bool loopless) {
  std::vector<Graph> shapes;
  if (m == 0) return shapes;
  shapes.push_back(graphs::path(m - 1));
  if (m >= 2) shapes.push_back(graphs::cycle(m));
  if (loopless) return shapes;
  std::vector<Graph> out;
  for (const Graph& s : shapes) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<Edge> es = s.edges();
      for (std::size_t v = 0; v < m; ++v)
        if (mask >> v & 1) es.push_back({"l" + std::to_string(v), graphs::vid(v), graphs::vid(v)});
      Graph g(s.vertices(), es);
      if (std::none_of(out.begin(), out.end(), [&](const Graph& h) { return isomorphic(g, h); })) out.push_back(g);
    }
  }
  return out;
}

inline Graph disjoint_sum(const std::vector<const Graph*>& parts) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string p = "c" + std::to_string(i) + ":";
    for (const auto& v : parts[i]->vertices()) vs.push_back(p + v);
    for (const auto& e : parts[i]->edges()) es.push_back({p + e.id, p + e.src, p + e.tgt});
  }
  return Graph(vs, es);
}

}  // namespace detail

/// Representatives of the isomorphism classes of rigid graphs on exactly k
/// vertices (without self-loops if `loopless`), built as multisets of
/// connected components and deduplicated with the isomorphism test.
inline std::vector<Graph> rigid_graphs(std::size_t k, bool loopless) {
  // Component catalogue ordered by size, so multisets are non-decreasing
  // index sequences.
  std::vector<Graph> comps;
  std::vector<std::size_t> size;
  for (std::size_t m = 1; m <= k; ++m)
    for (Graph& g : detail::rigid_components(m, loopless)) comps.push_back(std::move(g)), size.push_back(m);

  const ConstraintSet rigid = rigid_constraints();
  std::map<std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>, std::vector<Graph>> buckets;
  std::vector<Graph> out;
  std::vector<const Graph*> chosen;
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      Graph g = detail::disjoint_sum(chosen);
      if (!satisfies(g, rigid)) throw std::logic_error("component sum is not rigid");
      auto& bucket = buckets[detail::degree_profile(g)];
      if (std::none_of(bucket.begin(), bucket.end(), [&](const Graph& h) { return isomorphic(g, h); })) {
        bucket.push_back(g);
        out.push_back(g);
      }
      return;
    }
    for (std::size_t i = from; i < comps.size() && size[i] <= left; ++i) {
      chosen.push_back(&comps[i]);
      extend(i, left - size[i]);
      chosen.pop_back();
    }
  };
  extend(0, k);
  return out;
}

/// Class counts for k = 0..max_vertices.
inline std::vector<std::size_t> rigid_census(std::size_t max_vertices, bool loopless) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= max_vertices; ++k) out.push_back(rigid_graphs(k, loopless).size());
  return out;
}

}  // namespace resqpo
