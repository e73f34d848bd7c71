#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resqpo/cat_ops.hpp"
#include "resqpo/constraints.hpp"
#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/matching.hpp"
#include "resqpo/morphism.hpp"
#include "resqpo/overlaps.hpp"

namespace resqpo {

/// A linear rule O <-ko- K -ki-> I, read from input I to output O.
struct Rule {
  Morphism ko;
  Morphism ki;

  Rule() = default;
  Rule(Morphism k_to_o, Morphism k_to_i) : ko(std::move(k_to_o)), ki(std::move(k_to_i)) {
    if (!(ko.source() == ki.source())) throw precondition_error("rule legs must share the interface");
    if (!ko.is_homomorphism() || !ki.is_homomorphism()) throw precondition_error("rule leg is not a homomorphism");
    if (!ko.is_monic() || !ki.is_monic()) throw precondition_error("rule legs must be monic");
  }

  const Graph& output() const { return ko.target(); }
  const Graph& interface() const { return ko.source(); }
  const Graph& input() const { return ki.target(); }
};

/// The condition "no extension of the match along I -> P".
class NegativeCondition {
 public:
  explicit NegativeCondition(Morphism embedding) : embedding_(std::move(embedding)) {
    if (!embedding_.is_homomorphism() || !embedding_.is_monic())
      throw precondition_error("negative condition embedding must be a mono");
    if (embedding_.is_iso()) throw precondition_error("negative condition with an isomorphic context is constant false");
  }

  const Morphism& embedding() const { return embedding_; }
  const Graph& context() const { return embedding_.target(); }

 private:
  Morphism embedding_;
};

struct ConditionalRule {
  Rule rule;
  std::vector<NegativeCondition> nacs;

  ConditionalRule() = default;
  ConditionalRule(Rule r, std::vector<NegativeCondition> n) : rule(std::move(r)), nacs(std::move(n)) {
    for (const auto& c : nacs)
      if (!(c.embedding().source() == rule.input()))
        throw precondition_error("negative condition is not over the rule input");
  }
};

struct DirectDerivation {
  Morphism match;             // I -> X
  Complement deletion;        // K -> Xbar -> X
  Graph result;               // X'
  Morphism comatch;           // O -> X'
  Morphism from_intermediate; // Xbar -> X'
};

/// True iff the match extends along none of the conditions.
inline bool match_satisfies(const Morphism& m, const std::vector<NegativeCondition>& nacs) {
  for (const auto& c : nacs) {
    if (!(c.embedding().source() == m.source())) throw precondition_error("match source differs from condition source");
    PartialMap fixed = detail::pin_through(c.embedding(), m);
    if (exists_mono(c.context(), m.target(), &fixed)) return false;
  }
  return true;
}

inline std::vector<Morphism> admissible_matches(const ConditionalRule& r, const Graph& x) {
  std::vector<Morphism> out;
  for (auto& m : enumerate_monos(r.rule.input(), x))
    if (match_satisfies(m, r.nacs)) out.push_back(std::move(m));
  return out;
}

/// Sesqui-pushout rewriting step: final pullback complement on the input
/// side, pushout on the output side.
inline DirectDerivation apply_sqpo(const Rule& r, const Graph& x, const Morphism& m) {
  if (!(m.source() == r.input()) || !(m.target() == x)) throw precondition_error("match does not go from I into X");
  detail::require_monic(m, "match");
  Complement del = final_pullback_complement(r.ki, m);
  GluedGraph po = pushout(MonicSpan(r.ko, del.from_interface));
  return {m, del, po.graph, po.from_left, po.from_right};
}

inline bool nacs_equivalent(const NegativeCondition& a, const NegativeCondition& b, const Morphism& iso_on_input) {
  // Iso P -> P' with g . a = b . iso_on_input.
  PartialMap fixed = detail::pin_through(a.embedding(), compose(b.embedding(), iso_on_input));
  return find_isomorphism(a.context(), b.context(), &fixed).has_value();
}

/// The minimal constraint-preserving conditions of a rule: for every
/// relation C1 <- D -> C2 (either orientation) and every pullback embedding
/// of C2 <- D into O <- K, the context P = I +_D C1, kept when P itself
/// satisfies the constraint. Contexts are deduplicated up to iso under I.
inline std::vector<NegativeCondition> minimal_nacs(const Rule& r, const ForbiddenRelationSet& s) {
  for (const Graph* g : {&r.output(), &r.interface(), &r.input()})
    if (!satisfies(*g, s.source)) throw precondition_error("rule graphs must satisfy the constraints");
  std::vector<NegativeCondition> out;
  const Morphism id_i = Morphism::identity(r.input());
  for (const ForbiddenRelation& rel : s.relations) {
    for (int orient = 0; orient < 2; ++orient) {
      const Morphism& into_o = orient == 0 ? rel.span.right : rel.span.left;
      const Morphism& glued = orient == 0 ? rel.span.left : rel.span.right;
      detail::for_each_pullback_embedding(into_o, r.ko, [&](const Morphism&, const Morphism& d) {
        GluedGraph p = pushout(MonicSpan(compose(r.ki, d), glued));
        if (!satisfies(p.graph, s.source)) return true;
        NegativeCondition nac(p.from_left);
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const NegativeCondition& o) { return nacs_equivalent(o, nac, id_i); });
        if (!dup) out.push_back(std::move(nac));
        return true;
      });
    }
  }
  return out;
}

inline ConditionalRule with_minimal_nacs(const Rule& r, const ForbiddenRelationSet& s) {
  return ConditionalRule(r, minimal_nacs(r, s));
}

/// Rule isomorphism: isos kappa on K, omega on O, iota on I commuting with
/// the legs, with iota carrying the conditions onto each other.
inline bool rules_isomorphic(const ConditionalRule& x, const ConditionalRule& y) {
  const Rule& r = x.rule;
  const Rule& q = y.rule;
  if (x.nacs.size() != y.nacs.size()) return false;
  if (!detail::same_shape(r.interface(), q.interface()) || !detail::same_shape(r.output(), q.output()) ||
      !detail::same_shape(r.input(), q.input()))
    return false;
  for (const Morphism& kappa : enumerate_isomorphisms(r.interface(), q.interface())) {
    PartialMap fo = detail::pin_through(r.ko, compose(q.ko, kappa));
    if (!find_isomorphism(r.output(), q.output(), &fo)) continue;
    PartialMap fi = detail::pin_through(r.ki, compose(q.ki, kappa));
    for (const Morphism& iota : enumerate_isomorphisms(r.input(), q.input(), &fi)) {
      std::vector<bool> taken(y.nacs.size(), false);
      bool all = true;
      for (const auto& a : x.nacs) {
        bool hit = false;
        for (std::size_t j = 0; j < y.nacs.size() && !hit; ++j)
          if (!taken[j] && nacs_equivalent(a, y.nacs[j], iota)) taken[j] = hit = true;
        if (!(all = hit)) break;
      }
      if (all) return true;
    }
  }
  return false;
}

/// Every object and arrow of a sequential composition along an overlap of
/// I2 with O1.
struct CompositionDiagram {
  SpanPredicate match;
  MonicSpan overlap;            // I2 <- M -> O1
  GluedGraph n21;               // from_left: I2 -> N21, from_right: O1 -> N21
  Complement k1_prime;          // K1 -> K1' -> N21 (pushout complement)
  GluedGraph i21;               // from_left: I1 -> I21, from_right: K1' -> I21
  Complement k2_prime;          // K2 -> K2' -> N21 (final pullback complement)
  GluedGraph o21;               // from_left: O2 -> O21, from_right: K2' -> O21
  GluedGraph k21;               // from_left: K21 -> K1', from_right: K21 -> K2'
  ConditionalRule composite;
};

/// Composes r2 after r1 along an overlap of r2's input with r1's output.
/// Returns nothing when the overlap is not admissible: no pushout
/// complement for r1's output, a condition of r2 fails on I2 -> N21, a
/// condition of r1 fails on I1 -> I21, or I21 or O21 violates the
/// constraints. The composite's conditions are its minimal NACs.
inline std::optional<CompositionDiagram> compose_sqpo(const ConditionalRule& r2, const SpanPredicate& mu,
                                                      const ConditionalRule& r1, const ForbiddenRelationSet& s) {
  if (!(mu.left() == r2.rule.input()) || !(mu.right() == r1.rule.output()))
    throw precondition_error("overlap must relate the second rule's input to the first rule's output");
  CompositionDiagram d;
  d.match = mu;
  d.overlap = span_to_monic_span(mu);
  d.n21 = pushout(d.overlap);
  auto poc = pushout_complement(r1.rule.ko, d.n21.from_right);
  if (!poc) return std::nullopt;
  d.k1_prime = *poc;
  if (!match_satisfies(d.n21.from_left, r2.nacs)) return std::nullopt;
  d.i21 = pushout(MonicSpan(r1.rule.ki, d.k1_prime.from_interface));
  if (!match_satisfies(d.i21.from_left, r1.nacs)) return std::nullopt;
  d.k2_prime = final_pullback_complement(r2.rule.ki, d.n21.from_left);
  d.o21 = pushout(MonicSpan(r2.rule.ko, d.k2_prime.from_interface));
  d.k21 = pullback(Cospan(d.k1_prime.into_host, d.k2_prime.into_host));
  if (!satisfies(d.i21.graph, s.source) || !satisfies(d.o21.graph, s.source)) return std::nullopt;
  Rule r(compose(d.o21.from_right, d.k21.from_right), compose(d.i21.from_right, d.k21.from_left));
  d.composite = with_minimal_nacs(r, s);
  return d;
}

/// Curates the overlaps of r2's input with r1's output and keeps those along
/// which the rules compose.
inline std::vector<CompositionDiagram> enumerate_rule_matches(const ConditionalRule& r2, const ConditionalRule& r1,
                                                              const ForbiddenRelationSet& s, Strategy strategy,
                                                              const SearchLimits& limits = {}) {
  for (const ConditionalRule* r : {&r1, &r2})
    for (const Graph* g : {&r->rule.output(), &r->rule.interface(), &r->rule.input()})
      if (!satisfies(*g, s.source)) throw precondition_error("rule graphs must satisfy the constraints");
  std::vector<CompositionDiagram> out;
  for (const auto& o : curate(r2.rule.input(), r1.rule.output(), s, strategy, limits).overlaps)
    if (auto d = compose_sqpo(r2, o.span, r1, s)) out.push_back(std::move(*d));
  return out;
}

namespace rules {

inline Morphism inclusion(const Graph& sub, const Graph& g) {
  std::map<std::string, std::string> vm, em;
  for (const auto& v : sub.vertices()) vm[v] = v;
  for (const auto& e : sub.edges()) em[e.id] = e.id;
  return Morphism::from_maps(sub, g, vm, em);
}

// Rule from three graphs whose shared ids give the legs.
inline Rule by_ids(const Graph& o, const Graph& k, const Graph& i) { return Rule(inclusion(k, o), inclusion(k, i)); }

inline Rule identity(const Graph& g) { return by_ids(g, g, g); }

inline Rule create_vertex() { return by_ids(Graph({"u"}, {}), Graph(), Graph()); }
inline Rule delete_vertex() { return by_ids(Graph(), Graph(), Graph({"u"}, {})); }

inline Rule create_edge() {
  Graph uv({"u", "v"}, {});
  return by_ids(Graph({"u", "v"}, {{"e", "u", "v"}}), uv, uv);
}

inline Rule delete_edge() {
  Graph uv({"u", "v"}, {});
  return by_ids(uv, uv, Graph({"u", "v"}, {{"e", "u", "v"}}));
}

// Closes the chain v0 -> ... -> vn into a cycle with the new edge vn -> v0.
inline Rule create_cycle(std::size_t n) {
  if (n == 0) throw format_error("create-cycle needs a chain of at least one edge");
  return by_ids(graphs::cycle(n + 1), graphs::path(n), graphs::path(n));
}

// Breaks every edge of the chain v0 -> ... -> vn, keeping its vertices.
inline Rule break_chain(std::size_t n) {
  if (n == 0) throw format_error("break-chain needs a chain of at least one edge");
  return by_ids(graphs::discrete(n + 1), graphs::discrete(n + 1), graphs::path(n));
}

/// Looks up a builtin by name ("create-edge", "create-cycle:3", ...).
inline std::optional<Rule> builtin(const std::string& name) {
  if (name == "create-vertex") return create_vertex();
  if (name == "delete-vertex") return delete_vertex();
  if (name == "create-edge") return create_edge();
  if (name == "delete-edge") return delete_edge();
  for (const std::string prefix : {"create-cycle:", "break-chain:"}) {
    if (name.rfind(prefix, 0) != 0) continue;
    const std::string arg = name.substr(prefix.size());
    if (arg.empty() || arg.size() > 4 || arg.find_first_not_of("0123456789") != std::string::npos)
      throw format_error("bad parameter in rule name '" + name + "'");
    const std::size_t n = std::stoul(arg);
    return prefix == "create-cycle:" ? create_cycle(n) : break_chain(n);
  }
  return std::nullopt;
}

}  // namespace rules

}  // namespace resqpo
