#include <gtest/gtest.h>

#include <set>

#include "resqpo/overlaps.hpp"
#include "support/oracles.hpp"

namespace resqpo {
namespace {

namespace t = resqpo::testing;

const ForbiddenRelationSet& rigid_relations() {
  static const ForbiddenRelationSet s = decompose_forbidden_relations(rigid_constraints());
  return s;
}

std::set<std::pair<std::vector<IndexPair>, std::vector<IndexPair>>> as_set(const CurationResult& r) {
  std::set<std::pair<std::vector<IndexPair>, std::vector<IndexPair>>> out;
  for (const auto& o : r.overlaps) out.emplace(o.span.pv(), o.span.pe());
  return out;
}

TEST(SpanPredicate, RejectsNonInjectiveRelation) {
  Graph a = graphs::discrete(2), b = graphs::discrete(1);
  EXPECT_THROW(SpanPredicate(a, b, {{0, 0}, {1, 0}}, {}), precondition_error);
}

TEST(SpanPredicate, RejectsEdgePairWithoutEndpoints) {
  Graph e = graphs::path(1);
  EXPECT_THROW(SpanPredicate(e, e, {{0, 0}}, {{0, 0}}), precondition_error);
  EXPECT_THROW(SpanPredicate(e, e, {{0, 5}}, {}), format_error);
  EXPECT_THROW(SpanPredicate::from_ids(e, e, {{"v0", "nope"}}, {}), format_error);
}

TEST(SpanToMonicSpan, EmptyPredicateHasEmptyApex) {
  auto mu = span_to_monic_span(SpanPredicate::empty(graphs::path(2), graphs::cycle(2)));
  EXPECT_TRUE(mu.apex().empty());
}

TEST(SpanToMonicSpan, IdentityRelationGivesIdentityLegs) {
  Graph g = graphs::cycle(3);
  std::vector<IndexPair> pv, pe;
  for (std::size_t v = 0; v < 3; ++v) pv.emplace_back(v, v);
  for (std::size_t e = 0; e < 3; ++e) pe.emplace_back(e, e);
  auto mu = span_to_monic_span(SpanPredicate(g, g, pv, pe));
  EXPECT_TRUE(isomorphic(mu.apex(), g));
  EXPECT_TRUE(mu.left.is_iso());
  EXPECT_EQ(mu.left.vmap(), mu.right.vmap());
  EXPECT_EQ(mu.left.emap(), mu.right.emap());
}

TEST(SpanToMonicSpan, HeadToTailGivesOneVertexApex) {
  Graph e = graphs::path(1);
  auto phi = SpanPredicate::from_ids(e, e, {{"v1", "v0"}}, {});
  auto mu = span_to_monic_span(phi);
  EXPECT_EQ(mu.apex().vertex_count(), 1u);
  EXPECT_EQ(mu.apex().edge_count(), 0u);
  EXPECT_EQ(monic_span_to_predicate(mu), phi);
}

TEST(SpanToMonicSpan, RoundTripsOnRandomSpans) {
  for (int round = 0; round < 100; ++round) {
    Graph a = t::random_graph(t::uniform(0, 3), 3, "a");
    Graph b = t::random_graph(t::uniform(0, 3), 3, "b");
    for (const auto& phi : enumerate_spans(a, b)) {
      auto mu = span_to_monic_span(phi);
      ASSERT_TRUE(mu.left.is_monic() && mu.right.is_monic());
      ASSERT_EQ(monic_span_to_predicate(mu), phi);
    }
  }
}

TEST(EnumerateSpans, EmptyLeftGivesOnlyEmptySpan) {
  auto spans = enumerate_spans(Graph(), graphs::cycle(3));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].size(), 0u);
}

TEST(EnumerateSpans, TableOneCandidateCounts) {
  EXPECT_EQ(count_spans(graphs::path(1), graphs::path(1)), 8u);
  EXPECT_EQ(count_spans(graphs::path(2), graphs::cycle(3)), 49u);
  EXPECT_EQ(count_spans(graphs::path(4), graphs::cycle(5)), 2426u);
}

TEST(EnumerateSpans, AgreesWithBruteForceAndIsOrdered) {
  for (int round = 0; round < 150; ++round) {
    Graph a = t::random_graph(t::uniform(0, 3), 3, "a");
    Graph b = t::random_graph(t::uniform(0, 3), 3, "b");
    auto spans = enumerate_spans(a, b);
    auto brute = t::brute_force_spans(a, b);
    ASSERT_EQ(spans.size(), brute.size());
    std::set<std::pair<t::PairList, t::PairList>> got;
    for (const auto& phi : spans) got.emplace(phi.pv(), phi.pe());
    EXPECT_EQ(got.size(), spans.size());
    for (const auto& x : brute) EXPECT_TRUE(got.count(x));
    EXPECT_TRUE(std::is_sorted(spans.begin(), spans.end()));
  }
}

TEST(CurateDirect, TwoEdgesHaveFiveRigidOverlaps) {
  Graph e = graphs::path(1);
  auto r = curate_direct(e, e, rigid_constraints());
  EXPECT_EQ(r.candidates, 8u);
  ASSERT_EQ(r.overlaps.size(), 5u);
  std::set<std::pair<std::vector<IndexPair>, std::vector<IndexPair>>> expected = {
      {{}, {}},                        // empty
      {{{1, 0}}, {}},                  // head to tail
      {{{0, 1}}, {}},                  // tail to head
      {{{0, 1}, {1, 0}}, {}},          // antiparallel, forms a 2-cycle
      {{{0, 0}, {1, 1}}, {{0, 0}}},    // full edge overlap
  };
  EXPECT_EQ(as_set(r), expected);
}

TEST(CurateDirect, ChainIntoLoopHasEmptyPlusFullEmbeddings) {
  auto r = curate_direct(graphs::path(2), graphs::cycle(3), rigid_constraints());
  EXPECT_EQ(r.candidates, 49u);
  ASSERT_EQ(r.overlaps.size(), 4u);
  EXPECT_EQ(r.overlaps[0].span.size(), 0u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(r.overlaps[i].span.pe().size(), 2u);
}

TEST(CurateDirect, EmptyLeftGivesOneOverlap) {
  EXPECT_EQ(curate_direct(Graph(), graphs::cycle(4), rigid_constraints()).overlaps.size(), 1u);
}

TEST(CurateDirect, IllegalInputsAreRejected) {
  Graph fork({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "a", "c"}});
  EXPECT_THROW(curate_direct(fork, graphs::path(1), rigid_constraints()), precondition_error);
  EXPECT_THROW(curate_implicit(graphs::path(1), fork, rigid_constraints()), precondition_error);
  EXPECT_THROW(curate_dpe(fork, fork, rigid_relations()), precondition_error);
}

TEST(CurateDirect, WithoutConstraintsKeepsEverySpan) {
  for (int round = 0; round < 50; ++round) {
    Graph a = t::random_graph(t::uniform(0, 3), 3, "a");
    Graph b = t::random_graph(t::uniform(0, 3), 3, "b");
    auto r = curate_direct(a, b, ConstraintSet());
    EXPECT_EQ(r.overlaps.size(), *r.candidates);
  }
}

TEST(CurateDpe, TailToTailIsRejected) {
  Graph e = graphs::path(1);
  auto r = curate_dpe(e, e, rigid_relations());
  EXPECT_EQ(r.overlaps.size(), 5u);
  EXPECT_FALSE(as_set(r).count({{{0, 0}}, {}}));
}

TEST(CurateImplicit, TableOneCorrectCounts) {
  const auto c = rigid_constraints();
  EXPECT_EQ(curate_implicit(graphs::path(1), graphs::path(1), c).overlaps.size(), 5u);
  EXPECT_EQ(curate_implicit(graphs::path(2), graphs::cycle(3), c).overlaps.size(), 4u);
  EXPECT_EQ(curate_implicit(graphs::path(4), graphs::cycle(5), c).overlaps.size(), 6u);
  auto p4 = curate_implicit(graphs::path(7), graphs::cycle(8), c);
  EXPECT_EQ(p4.overlaps.size(), 9u);
  EXPECT_EQ(p4.completed_rejected, 0u);
  EXPECT_FALSE(p4.candidates);
}

TEST(CurateImplicit, DirectStrategyTimesOutOnLargeInstance) {
  EXPECT_THROW(curate_direct(graphs::path(7), graphs::cycle(8), rigid_constraints(),
                             SearchLimits::within(std::chrono::milliseconds(200))),
               search_timeout);
}

TEST(Curate, ChainLoopFamilyHasNPlusTwo) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (Strategy st : {Strategy::direct, Strategy::dpe, Strategy::implicit})
      EXPECT_EQ(curate(graphs::path(n), graphs::cycle(n + 1), rigid_relations(), st).overlaps.size(), n + 2)
          << to_string(st) << " n=" << n;
}

TEST(Curate, StrategiesAgreeOnRandomRigidPairs) {
  for (int round = 0; round < 100; ++round) {
    Graph a = t::random_rigid_graph(4, 4, "a");
    Graph b = t::random_rigid_graph(4, 4, "b");
    auto d = curate(a, b, rigid_relations(), Strategy::direct);
    auto p = curate(a, b, rigid_relations(), Strategy::dpe);
    auto i = curate(a, b, rigid_relations(), Strategy::implicit);
    ASSERT_EQ(as_set(d), as_set(p));
    ASSERT_EQ(as_set(d), as_set(i));
    EXPECT_EQ(i.completed_rejected, 0u);
    for (std::size_t k = 0; k < d.overlaps.size(); ++k) EXPECT_EQ(d.overlaps[k].span, i.overlaps[k].span);
  }
}

TEST(Curate, AttachedPushoutsAreAdmissiblePushouts) {
  const auto c = rigid_constraints();
  for (int round = 0; round < 50; ++round) {
    Graph a = t::random_rigid_graph(4, 4, "a");
    Graph b = t::random_rigid_graph(4, 4, "b");
    for (const auto& o : curate_implicit(a, b, c).overlaps) {
      EXPECT_TRUE(satisfies(o.pushout.graph, c));
      EXPECT_TRUE(is_pushout_square({o.monic.left, o.monic.right, o.pushout.from_left, o.pushout.from_right}));
    }
  }
}

TEST(Curate, SizeBoundedByCandidates) {
  for (int round = 0; round < 50; ++round) {
    Graph a = t::random_rigid_graph(3, 3, "a");
    Graph b = t::random_rigid_graph(3, 3, "b");
    auto r = curate_direct(a, b, rigid_constraints());
    EXPECT_LE(r.overlaps.size(), *r.candidates);
  }
}

}  // namespace
}  // namespace resqpo
