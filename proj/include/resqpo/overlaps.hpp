#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resqpo/cat_ops.hpp"
#include "resqpo/constraints.hpp"
#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/matching.hpp"
#include "resqpo/search.hpp"

namespace resqpo {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// A bi-injective relation between the elements of two graphs that is
/// closed under taking endpoints: the canonical form of a monic span
/// A <- M -> B. Pairs are (index in A, index in B), kept sorted.
class SpanPredicate {
 public:
  SpanPredicate() = default;

  SpanPredicate(Graph left, Graph right, std::vector<IndexPair> pv, std::vector<IndexPair> pe)
      : left_(std::move(left)), right_(std::move(right)), pv_(std::move(pv)), pe_(std::move(pe)) {
    std::sort(pv_.begin(), pv_.end());
    std::sort(pe_.begin(), pe_.end());
    check();
  }

  /// The empty overlap of a and b.
  static SpanPredicate empty(Graph a, Graph b) { return SpanPredicate(std::move(a), std::move(b), {}, {}); }

  /// Builds a predicate from element ids; throws format_error on unknown ids.
  static SpanPredicate from_ids(const Graph& a, const Graph& b,
                                const std::vector<std::pair<std::string, std::string>>& pv,
                                const std::vector<std::pair<std::string, std::string>>& pe) {
    auto lookup = [](const std::optional<std::size_t>& i, const std::string& id) {
      if (!i) throw format_error("span refers to unknown id '" + id + "'");
      return *i;
    };
    std::vector<IndexPair> v, e;
    for (const auto& [x, y] : pv) v.emplace_back(lookup(a.vertex_index(x), x), lookup(b.vertex_index(y), y));
    for (const auto& [x, y] : pe) e.emplace_back(lookup(a.edge_index(x), x), lookup(b.edge_index(y), y));
    return SpanPredicate(a, b, std::move(v), std::move(e));
  }

  const Graph& left() const { return left_; }
  const Graph& right() const { return right_; }
  const std::vector<IndexPair>& pv() const { return pv_; }
  const std::vector<IndexPair>& pe() const { return pe_; }
  std::size_t size() const { return pv_.size() + pe_.size(); }

  friend bool operator==(const SpanPredicate& x, const SpanPredicate& y) {
    return x.pv_ == y.pv_ && x.pe_ == y.pe_ && x.left_ == y.left_ && x.right_ == y.right_;
  }

  /// Result order: fewer edge pairs first, then fewer vertex pairs, then
  /// lexicographic on the pair lists.
  friend bool operator<(const SpanPredicate& x, const SpanPredicate& y) {
    return std::make_tuple(x.pe_.size(), x.pv_.size(), std::cref(x.pv_), std::cref(x.pe_)) <
           std::make_tuple(y.pe_.size(), y.pv_.size(), std::cref(y.pv_), std::cref(y.pe_));
  }

 private:
  void check() const {
    const std::size_t av = left_.vertex_count(), bv = right_.vertex_count();
    const std::size_t ae = left_.edge_count(), be = right_.edge_count();
    for (auto [x, y] : pv_)
      if (x >= av || y >= bv) throw format_error("vertex pair out of range");
    for (auto [x, y] : pe_)
      if (x >= ae || y >= be) throw format_error("edge pair out of range");
    auto injective = [](const std::vector<IndexPair>& ps, bool first) {
      std::vector<std::size_t> xs;
      for (const auto& p : ps) xs.push_back(first ? p.first : p.second);
      std::sort(xs.begin(), xs.end());
      return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
    };
    if (!injective(pv_, true) || !injective(pv_, false) || !injective(pe_, true) || !injective(pe_, false))
      throw precondition_error("span predicate is not bi-injective");
    for (auto [e, f] : pe_) {
      const IndexPair s{left_.source(e), right_.source(f)}, t{left_.target(e), right_.target(f)};
      if (!std::binary_search(pv_.begin(), pv_.end(), s) || !std::binary_search(pv_.begin(), pv_.end(), t))
        throw precondition_error("edge pair (" + left_.edge(e).id + ", " + right_.edge(f).id +
                                 ") is not matched by its endpoints");
    }
  }

  Graph left_, right_;
  std::vector<IndexPair> pv_, pe_;
};

/// The monic span A <- M -> B of a predicate. M has one vertex "a|b" per
/// vertex pair and one edge "e|f" per edge pair; the legs are projections.
inline MonicSpan span_to_monic_span(const SpanPredicate& phi) {
  const Graph& a = phi.left();
  const Graph& b = phi.right();
  std::vector<std::string> vs;
  std::vector<Edge> es;
  auto vname = [&](const IndexPair& p) { return a.vertex_id(p.first) + "|" + b.vertex_id(p.second); };
  for (const auto& p : phi.pv()) vs.push_back(vname(p));
  for (auto [e, f] : phi.pe())
    es.push_back({a.edge(e).id + "|" + b.edge(f).id, vname({a.source(e), b.source(f)}),
                  vname({a.target(e), b.target(f)})});
  Graph m(vs, es);
  std::vector<std::size_t> lv(m.vertex_count()), rv(m.vertex_count()), le(m.edge_count()), re(m.edge_count());
  for (const auto& p : phi.pv()) {
    const std::size_t i = *m.vertex_index(vname(p));
    lv[i] = p.first, rv[i] = p.second;
  }
  for (auto [e, f] : phi.pe()) {
    const std::size_t i = *m.edge_index(a.edge(e).id + "|" + b.edge(f).id);
    le[i] = e, re[i] = f;
  }
  return MonicSpan(Morphism(m, a, lv, le), Morphism(m, b, rv, re));
}

/// The predicate of a monic span: pairs (left(z), right(z)) over apex elements.
inline SpanPredicate monic_span_to_predicate(const MonicSpan& mu) {
  std::vector<IndexPair> pv, pe;
  for (std::size_t z = 0; z < mu.apex().vertex_count(); ++z) pv.emplace_back(mu.left.vertex(z), mu.right.vertex(z));
  for (std::size_t z = 0; z < mu.apex().edge_count(); ++z) pe.emplace_back(mu.left.edge(z), mu.right.edge(z));
  return SpanPredicate(mu.left.target(), mu.right.target(), std::move(pv), std::move(pe));
}

struct CuratedOverlap {
  SpanPredicate span;
  MonicSpan monic;
  GluedGraph pushout;
};

enum class Strategy { direct, dpe, implicit };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::direct: return "direct";
    case Strategy::dpe: return "dpe";
    case Strategy::implicit: return "implicit";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(const std::string& s) {
  if (s == "direct") return Strategy::direct;
  if (s == "dpe") return Strategy::dpe;
  if (s == "implicit") return Strategy::implicit;
  return std::nullopt;
}

struct CurationResult {
  std::vector<CuratedOverlap> overlaps;
  std::optional<std::uint64_t> candidates;  // only when every span was enumerated
  SearchStats stats;
  std::uint64_t completed_rejected = 0;     // complete spans whose pushout failed the check
};

namespace detail {

// One variable per element of A: its partner in B (value k > 0 means the
// B element with index k-1) or none (value 0). Edges of A come first, in
// an order that follows adjacency; choosing an edge partner forces the
// partners of both endpoints. Vertex variables then settle the rest.
//
// With a constraint set attached, every successful assignment rebuilds the
// partial quotient (A + B modulo the pairs decided so far) and rejects the
// state if some forbidden pattern embeds in a way no remaining decision can
// undo. An embedding can only be undone by merging two of its elements,
// which needs an undecided A element and a free, compatible B element.
class OverlapProblem {
 public:
  OverlapProblem(const Graph& a, const Graph& b, const ConstraintSet* c = nullptr)
      : ga_(a), gb_(b), a_(ga_.topology()), b_(gb_.topology()), c_(c) {
    const std::size_t av = a_.vertex_count, ae = a_.edge_count();
    vpart_.assign(av, npos);
    epart_.assign(ae, npos);
    vforce_.assign(av, 0);
    vdecided_.assign(av, false);
    edecided_.assign(ae, false);
    vowner_.assign(b_.vertex_count, npos);
    eowner_.assign(b_.edge_count(), npos);
    order_edges();
    if (c_)
      for (const Graph& p : c_->patterns()) patterns_.push_back(&p.topology());
  }

  std::size_t num_variables() const { return a_.edge_count() + a_.vertex_count; }
  std::size_t domain_size(std::size_t var) const {
    return 1 + (var < a_.edge_count() ? b_.edge_count() : b_.vertex_count);
  }

  bool assign(std::size_t var, std::size_t val) {
    const bool ok = var < a_.edge_count() ? assign_edge(edge_order_[var], val)
                                          : assign_vertex(var - a_.edge_count(), val);
    if (!ok) return false;
    if (c_ && violated()) {
      unassign(var);
      return false;
    }
    return true;
  }

  void unassign(std::size_t var) {
    if (var < a_.edge_count()) {
      const std::size_t e = edge_order_[var];
      edecided_[e] = false;
      if (epart_[e] == npos) return;
      eowner_[epart_[e]] = npos;
      epart_[e] = npos;
      release(a_.src[e]);
      release(a_.tgt[e]);
    } else {
      const std::size_t v = var - a_.edge_count();
      vdecided_[v] = false;
      if (vpart_[v] != npos) release(v);
    }
  }

  /// Reads the current complete assignment as a predicate.
  SpanPredicate predicate(const Graph& a, const Graph& b) const {
    std::vector<IndexPair> pv, pe;
    for (std::size_t v = 0; v < vpart_.size(); ++v)
      if (vpart_[v] != npos) pv.emplace_back(v, vpart_[v]);
    for (std::size_t e = 0; e < epart_.size(); ++e)
      if (epart_[e] != npos) pe.emplace_back(e, epart_[e]);
    return SpanPredicate(a, b, std::move(pv), std::move(pe));
  }

 private:
  void order_edges() {
    std::vector<bool> touched(a_.vertex_count, false), placed(a_.edge_count(), false);
    for (std::size_t n = 0; n < a_.edge_count(); ++n) {
      std::size_t best = npos;
      int best_score = -1;
      for (std::size_t e = 0; e < a_.edge_count(); ++e) {
        if (placed[e]) continue;
        const int score = int(touched[a_.src[e]]) + int(touched[a_.tgt[e]]);
        if (score > best_score) best = e, best_score = score;
      }
      placed[best] = true;
      touched[a_.src[best]] = touched[a_.tgt[best]] = true;
      edge_order_.push_back(best);
    }
  }

  bool can_bind(std::size_t v, std::size_t w) const {
    if (vpart_[v] != npos) return vpart_[v] == w;
    return !vdecided_[v] && vowner_[w] == npos;
  }

  void bind(std::size_t v, std::size_t w) {
    if (vforce_[v]++ == 0) vpart_[v] = w, vowner_[w] = v;
  }

  void release(std::size_t v) {
    if (--vforce_[v] == 0) vowner_[vpart_[v]] = npos, vpart_[v] = npos;
  }

  bool assign_edge(std::size_t e, std::size_t val) {
    if (val == 0) {
      edecided_[e] = true;
      return true;
    }
    const std::size_t f = val - 1;
    if (eowner_[f] != npos) return false;
    const std::size_t s = a_.src[e], t = a_.tgt[e], bs = b_.src[f], bt = b_.tgt[f];
    if ((s == t) != (bs == bt)) return false;
    if (!can_bind(s, bs) || !can_bind(t, bt)) return false;
    bind(s, bs);
    bind(t, bt);
    epart_[e] = f;
    eowner_[f] = e;
    edecided_[e] = true;
    return true;
  }

  bool assign_vertex(std::size_t v, std::size_t val) {
    if (val == 0) {
      if (vpart_[v] != npos) return false;
      vdecided_[v] = true;
      return true;
    }
    if (!can_bind(v, val - 1)) return false;
    bind(v, val - 1);
    vdecided_[v] = true;
    return true;
  }

  // Could undecided A edge e still be paired with free B edge f?
  bool edge_mergeable(std::size_t e, std::size_t f) const {
    const std::size_t s = a_.src[e], t = a_.tgt[e], bs = b_.src[f], bt = b_.tgt[f];
    return (s == t) == (bs == bt) && can_bind(s, bs) && can_bind(t, bt);
  }

  // Quotient elements remember where they came from: (A index, B index),
  // npos on the side that does not contribute.
  void build_quotient() {
    const std::size_t av = a_.vertex_count, bv = b_.vertex_count;
    qv_origin_.clear();
    qe_origin_.clear();
    a_to_q_.assign(av, npos);
    b_to_q_.assign(bv, npos);
    for (std::size_t v = 0; v < av; ++v) {
      a_to_q_[v] = qv_origin_.size();
      qv_origin_.emplace_back(v, vpart_[v]);
      if (vpart_[v] != npos) b_to_q_[vpart_[v]] = a_to_q_[v];
    }
    for (std::size_t w = 0; w < bv; ++w)
      if (b_to_q_[w] == npos) b_to_q_[w] = qv_origin_.size(), qv_origin_.emplace_back(npos, w);
    q_.reset(qv_origin_.size());
    for (std::size_t e = 0; e < a_.edge_count(); ++e) {
      q_.add_edge(a_to_q_[a_.src[e]], a_to_q_[a_.tgt[e]]);
      qe_origin_.emplace_back(e, epart_[e]);
    }
    for (std::size_t f = 0; f < b_.edge_count(); ++f) {
      if (eowner_[f] != npos) continue;
      q_.add_edge(b_to_q_[b_.src[f]], b_to_q_[b_.tgt[f]]);
      qe_origin_.emplace_back(npos, f);
    }
  }

  bool settled(const std::vector<std::size_t>& vm, const std::vector<std::size_t>& em) const {
    std::vector<std::size_t> open_av, open_ae, free_bv, free_be;
    for (std::size_t q : vm) {
      auto [x, y] = qv_origin_[q];
      if (x == npos) free_bv.push_back(y);
      else if (y == npos && !vdecided_[x]) open_av.push_back(x);
    }
    for (std::size_t q : em) {
      auto [x, y] = qe_origin_[q];
      if (x == npos) free_be.push_back(y);
      else if (y == npos && !edecided_[x]) open_ae.push_back(x);
    }
    if (!open_av.empty() && !free_bv.empty()) return false;
    for (std::size_t e : open_ae)
      for (std::size_t f : free_be)
        if (edge_mergeable(e, f)) return false;
    return true;
  }

  bool violated() {
    build_quotient();
    for (const Topology* p : patterns_) {
      bool hit = false;
      MonoMatcher m(*p, q_);
      m.run([&](const std::vector<std::size_t>& vm, const std::vector<std::size_t>& em) {
        return !(hit = settled(vm, em));
      });
      if (hit) return true;
    }
    return false;
  }

  Graph ga_, gb_;
  const Topology& a_;
  const Topology& b_;
  const ConstraintSet* c_;
  std::vector<const Topology*> patterns_;
  std::vector<std::size_t> edge_order_;
  std::vector<std::size_t> vpart_, epart_, vforce_, vowner_, eowner_;
  std::vector<bool> vdecided_, edecided_;
  Topology q_;
  std::vector<IndexPair> qv_origin_, qe_origin_;
  std::vector<std::size_t> a_to_q_, b_to_q_;
};

inline void require_legal_inputs(const Graph& a, const Graph& b, const ConstraintSet& c) {
  if (!satisfies(a, c) || !satisfies(b, c)) throw precondition_error("inputs must satisfy constraints");
}

inline CuratedOverlap attach_pushout(SpanPredicate phi) {
  MonicSpan mu = span_to_monic_span(phi);
  GluedGraph po = pushout(mu);
  return {std::move(phi), std::move(mu), std::move(po)};
}

inline void sort_overlaps(std::vector<CuratedOverlap>& v) {
  std::sort(v.begin(), v.end(), [](const CuratedOverlap& x, const CuratedOverlap& y) { return x.span < y.span; });
}

}  // namespace detail

/// Visits every span predicate over (a, b) once, including the empty one.
/// Visitor: bool(const SpanPredicate&); return false to stop.
template <class Visitor>
SearchStats for_each_span(const Graph& a, const Graph& b, Visitor&& visit, const SearchLimits& limits = {}) {
  detail::OverlapProblem p(a, b);
  return solve(p, [&](const std::vector<std::size_t>&) { return visit(p.predicate(a, b)); }, limits);
}

/// All span predicates over (a, b) in result order.
inline std::vector<SpanPredicate> enumerate_spans(const Graph& a, const Graph& b, const SearchLimits& limits = {}) {
  std::vector<SpanPredicate> out;
  for_each_span(a, b, [&](SpanPredicate phi) { return out.push_back(std::move(phi)), true; }, limits);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t count_spans(const Graph& a, const Graph& b, const SearchLimits& limits = {}) {
  detail::OverlapProblem p(a, b);
  return solve(p, [](const auto&) { return true; }, limits).solutions;
}

/// Enumerate every span, form its pushout and keep those satisfying c.
inline CurationResult curate_direct(const Graph& a, const Graph& b, const ConstraintSet& c,
                                    const SearchLimits& limits = {}) {
  detail::require_legal_inputs(a, b, c);
  CurationResult r;
  std::uint64_t n = 0;
  r.stats = for_each_span(
      a, b,
      [&](SpanPredicate phi) {
        ++n;
        CuratedOverlap o = detail::attach_pushout(std::move(phi));
        if (satisfies(o.pushout.graph, c)) r.overlaps.push_back(std::move(o));
        return true;
      },
      limits);
  r.candidates = n;
  detail::sort_overlaps(r.overlaps);
  return r;
}

/// Enumerate every span and keep those admitting no double-pullback
/// embedding of a forbidden relation; pushouts only for the survivors.
inline CurationResult curate_dpe(const Graph& a, const Graph& b, const ForbiddenRelationSet& s,
                                 const SearchLimits& limits = {}) {
  detail::require_legal_inputs(a, b, s.source);
  CurationResult r;
  std::uint64_t n = 0;
  r.stats = for_each_span(
      a, b,
      [&](SpanPredicate phi) {
        ++n;
        MonicSpan mu = span_to_monic_span(phi);
        if (!has_dpe(mu, s)) {
          GluedGraph po = pushout(mu);
          r.overlaps.push_back({std::move(phi), std::move(mu), std::move(po)});
        }
        return true;
      },
      limits);
  r.candidates = n;
  detail::sort_overlaps(r.overlaps);
  return r;
}

/// One search that builds the span and its quotient together, pruning as
/// soon as the partial quotient is bound to contain a forbidden pattern.
/// Every span it completes is admissible; completed_rejected counts any
/// that are not (always zero unless the pruning is unsound).
inline CurationResult curate_implicit(const Graph& a, const Graph& b, const ConstraintSet& c,
                                      const SearchLimits& limits = {}) {
  detail::require_legal_inputs(a, b, c);
  CurationResult r;
  detail::OverlapProblem p(a, b, &c);
  r.stats = solve(
      p,
      [&](const std::vector<std::size_t>&) {
        CuratedOverlap o = detail::attach_pushout(p.predicate(a, b));
        if (!satisfies(o.pushout.graph, c)) ++r.completed_rejected;
        r.overlaps.push_back(std::move(o));
        return true;
      },
      limits);
  detail::sort_overlaps(r.overlaps);
  return r;
}

inline CurationResult curate(const Graph& a, const Graph& b, const ForbiddenRelationSet& s, Strategy strategy,
                             const SearchLimits& limits = {}) {
  switch (strategy) {
    case Strategy::direct: return curate_direct(a, b, s.source, limits);
    case Strategy::dpe: return curate_dpe(a, b, s, limits);
    case Strategy::implicit: return curate_implicit(a, b, s.source, limits);
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace resqpo
