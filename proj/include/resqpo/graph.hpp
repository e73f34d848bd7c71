#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resqpo/errors.hpp"

namespace resqpo {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::string id;
  std::string src;
  std::string tgt;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

// Index-level view of a multigraph. All matching and search code runs on
// this representation; string ids only matter at the API boundary.
struct Topology {
  std::size_t vertex_count = 0;
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;

  void reset(std::size_t n) {
    vertex_count = n;
    src.clear();
    tgt.clear();
    out.assign(n, {});
    in.assign(n, {});
  }

  std::size_t edge_count() const { return src.size(); }

  std::size_t add_edge(std::size_t s, std::size_t t) {
    const std::size_t e = src.size();
    src.push_back(s);
    tgt.push_back(t);
    if (s < vertex_count) out[s].push_back(e);
    if (t < vertex_count) in[t].push_back(e);
    return e;
  }
};

}  // namespace detail

/// Finite directed multigraph with string-identified vertices and edges.
///
/// Graphs are immutable values that share their storage on copy. Vertex ids
/// are kept sorted lexicographically and edges sorted by id, so the index of
/// an element is its rank in canonical id order.
class Graph {
 public:
  Graph() : data_(empty_data()) {}

  /// Builds a graph and throws format_error if it is not well formed.
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
      : data_(build(std::move(vertices), std::move(edges))) {
    if (!data_->valid) throw format_error("invalid graph: " + data_->first_violation);
  }

  /// Builds a graph without rejecting invariant violations, so that
  /// validate_graph can report them.
  static Graph unchecked(std::vector<std::string> vertices, std::vector<Edge> edges) {
    Graph g;
    g.data_ = build(std::move(vertices), std::move(edges));
    return g;
  }

  std::size_t vertex_count() const { return data_->vertices.size(); }
  std::size_t edge_count() const { return data_->edges.size(); }
  bool empty() const { return vertex_count() == 0 && edge_count() == 0; }
  bool valid() const { return data_->valid; }

  const std::vector<std::string>& vertices() const { return data_->vertices; }
  const std::vector<Edge>& edges() const { return data_->edges; }
  const std::string& vertex_id(std::size_t v) const { return data_->vertices[v]; }
  const Edge& edge(std::size_t e) const { return data_->edges[e]; }

  std::optional<std::size_t> vertex_index(std::string_view id) const {
    const auto& vs = data_->vertices;
    auto it = std::lower_bound(vs.begin(), vs.end(), id);
    if (it == vs.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vs.begin());
  }

  std::optional<std::size_t> edge_index(std::string_view id) const {
    const auto& es = data_->edges;
    auto it = std::lower_bound(es.begin(), es.end(), id,
                               [](const Edge& e, std::string_view key) { return e.id < key; });
    if (it == es.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - es.begin());
  }

  std::size_t source(std::size_t e) const { return data_->topo.src[e]; }
  std::size_t target(std::size_t e) const { return data_->topo.tgt[e]; }
  std::span<const std::size_t> out_edges(std::size_t v) const { return data_->topo.out[v]; }
  std::span<const std::size_t> in_edges(std::size_t v) const { return data_->topo.in[v]; }
  const detail::Topology& topology() const { return data_->topo; }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->vertices == b.data_->vertices && a.data_->edges == b.data_->edges;
  }

 private:
  struct Data {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    detail::Topology topo;
    bool valid = true;
    std::string first_violation;
  };

  static std::shared_ptr<const Data> empty_data() {
    static const auto empty = std::make_shared<const Data>();
    return empty;
  }

  static std::shared_ptr<const Data> build(std::vector<std::string> vertices, std::vector<Edge> edges) {
    auto d = std::make_shared<Data>();
    std::sort(vertices.begin(), vertices.end());
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.id < b.id; });
    d->vertices = std::move(vertices);
    d->edges = std::move(edges);

    auto note = [&](std::string msg) {
      if (d->valid) d->first_violation = std::move(msg);
      d->valid = false;
    };
    for (std::size_t i = 1; i < d->vertices.size(); ++i)
      if (d->vertices[i] == d->vertices[i - 1]) note("duplicate vertex id '" + d->vertices[i] + "'");
    for (std::size_t i = 1; i < d->edges.size(); ++i)
      if (d->edges[i].id == d->edges[i - 1].id) note("duplicate edge id '" + d->edges[i].id + "'");

    auto find = [&](const std::string& id) -> std::size_t {
      auto it = std::lower_bound(d->vertices.begin(), d->vertices.end(), id);
      if (it == d->vertices.end() || *it != id) return npos;
      return static_cast<std::size_t>(it - d->vertices.begin());
    };
    d->topo.reset(d->vertices.size());
    for (const Edge& e : d->edges) {
      const std::size_t s = find(e.src);
      const std::size_t t = find(e.tgt);
      if (s == npos) note("edge '" + e.id + "' has unknown source '" + e.src + "'");
      if (t == npos) note("edge '" + e.id + "' has unknown target '" + e.tgt + "'");
      d->topo.add_edge(s, t);
    }
    return d;
  }

  std::shared_ptr<const Data> data_;
};

/// Returns every invariant violation of g; an empty result means g is valid.
/// Each message names the offending id.
inline std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> violations;
  const auto& vs = g.vertices();
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (vs[i] == vs[i - 1] && (i == 1 || vs[i - 2] != vs[i]))
      violations.push_back("duplicate vertex id '" + vs[i] + "'");
  const auto& es = g.edges();
  for (std::size_t i = 1; i < es.size(); ++i)
    if (es[i].id == es[i - 1].id && (i == 1 || es[i - 2].id != es[i].id))
      violations.push_back("duplicate edge id '" + es[i].id + "'");
  for (std::size_t e = 0; e < es.size(); ++e) {
    if (g.source(e) == npos)
      violations.push_back("edge '" + es[e].id + "' has unknown source '" + es[e].src + "'");
    if (g.target(e) == npos)
      violations.push_back("edge '" + es[e].id + "' has unknown target '" + es[e].tgt + "'");
  }
  return violations;
}

/// Small named graphs used throughout the tests, builtin rules and benchmarks.
namespace graphs {

inline std::string vid(std::size_t i) { return "v" + std::to_string(i); }
inline std::string eid(std::size_t i) { return "e" + std::to_string(i); }

/// n isolated vertices v0..v(n-1).
inline Graph discrete(std::size_t n) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(vid(i));
  return Graph(std::move(vs), {});
}

/// Directed path with n edges: v0 -> v1 -> ... -> vn.
inline Graph path(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i <= n; ++i) vs.push_back(vid(i));
  for (std::size_t i = 0; i < n; ++i) es.push_back({eid(i), vid(i), vid(i + 1)});
  return Graph(std::move(vs), std::move(es));
}

/// Directed cycle with n edges: v0 -> v1 -> ... -> v(n-1) -> v0. n = 1 is a
/// single self-loop.
inline Graph cycle(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(vid(i));
  for (std::size_t i = 0; i < n; ++i) es.push_back({eid(i), vid(i), vid((i + 1) % n)});
  return Graph(std::move(vs), std::move(es));
}

}  // namespace graphs

}  // namespace resqpo
