#include <gtest/gtest.h>

#include "resqpo/io.hpp"
#include "support/oracles.hpp"

namespace resqpo {
namespace {

namespace t = resqpo::testing;
using io::json;

TEST(Io, GraphRoundTrip) {
  for (int i = 0; i < 50; ++i) {
    Graph g = t::random_graph(t::uniform(0, 5), 6);
    EXPECT_EQ(io::graph_from_json(io::to_json(g)), g);
  }
}

TEST(Io, GraphRejectsUnknownKey) {
  json j = io::to_json(graphs::path(1));
  j["colour"] = "red";
  EXPECT_THROW(io::graph_from_json(j), format_error);
}

TEST(Io, GraphRejectsMissingKeyAndBadTypes) {
  EXPECT_THROW(io::graph_from_json(json{{"vertices", json::array()}}), format_error);
  EXPECT_THROW(io::graph_from_json(json{{"vertices", {1, 2}}, {"edges", json::array()}}), format_error);
  EXPECT_THROW(io::graph_from_json(json::array()), format_error);
  json e = io::to_json(graphs::path(1));
  e["edges"][0]["weight"] = 3;
  EXPECT_THROW(io::graph_from_json(e), format_error);
}

TEST(Io, GraphRejectsDanglingEdge) {
  json j = {{"vertices", {"a"}}, {"edges", {{{"id", "e"}, {"src", "a"}, {"tgt", "b"}}}}};
  EXPECT_THROW(io::graph_from_json(j), format_error);
}

TEST(Io, MorphismRoundTrip) {
  Graph h = graphs::cycle(4);
  for (const Morphism& m : enumerate_monos(graphs::path(2), h)) {
    EXPECT_EQ(io::morphism_from_json(io::to_json(m), m.source(), h), m);
  }
}

TEST(Io, MorphismRejectsPartialAndNonHomomorphic) {
  Graph p = graphs::path(1);
  json partial = {{"vmap", {{"v0", "v0"}}}, {"emap", json::object()}};
  EXPECT_THROW(io::morphism_from_json(partial, p, p), format_error);
  json flipped = {{"vmap", {{"v0", "v1"}, {"v1", "v0"}}}, {"emap", {{"e0", "e0"}}}};
  EXPECT_THROW(io::morphism_from_json(flipped, p, p), format_error);
}

TEST(Io, ConstraintRoundTrip) {
  ConstraintSet c = rigid_constraints();
  ConstraintSet back = io::constraints_from_json(io::to_json(c));
  ASSERT_EQ(back.patterns().size(), c.patterns().size());
  for (std::size_t i = 0; i < c.patterns().size(); ++i) EXPECT_EQ(back.patterns()[i], c.patterns()[i]);
}

TEST(Io, SpanRoundTrip) {
  Graph a = graphs::path(2), b = graphs::cycle(3);
  for (const SpanPredicate& phi : enumerate_spans(a, b)) EXPECT_EQ(io::span_from_json(io::to_json(phi)), phi);
}

TEST(Io, SpanRejectsIllFormedPairs) {
  json j = io::to_json(SpanPredicate(graphs::path(1), graphs::path(1), {}, {}));
  j["pv"] = {{"v0"}};
  EXPECT_THROW(io::span_from_json(j), format_error);
  j["pv"] = {{"v0", "nope"}};
  EXPECT_THROW(io::span_from_json(j), std::invalid_argument);
}

TEST(Io, RuleRoundTripWithNacs) {
  const ForbiddenRelationSet s = decompose_forbidden_relations(rigid_constraints());
  for (const char* name : {"create-edge", "delete-vertex", "create-cycle:2", "break-chain:3"}) {
    auto r = rules::builtin(name);
    ASSERT_TRUE(r) << name;
    ConditionalRule cr = with_minimal_nacs(*r, s);
    ConditionalRule back = io::rule_from_json(io::to_json(cr));
    EXPECT_EQ(back.rule.ko, cr.rule.ko);
    EXPECT_EQ(back.rule.ki, cr.rule.ki);
    ASSERT_EQ(back.nacs.size(), cr.nacs.size());
    for (std::size_t i = 0; i < cr.nacs.size(); ++i) EXPECT_EQ(back.nacs[i].embedding(), cr.nacs[i].embedding());
    EXPECT_TRUE(rules_isomorphic(back, cr));
  }
}

TEST(Io, RuleNacsOptionalAndUnknownKeysRejected) {
  json j = io::to_json(ConditionalRule(*rules::builtin("create-edge"), {}));
  j.erase("nacs");
  EXPECT_NO_THROW(io::rule_from_json(j));
  j["name"] = "x";
  EXPECT_THROW(io::rule_from_json(j), format_error);
}

TEST(Io, DumpIsDeterministic) {
  json a = io::to_json(graphs::cycle(3));
  EXPECT_EQ(io::dump(a), io::dump(io::to_json(io::graph_from_json(a))));
  EXPECT_EQ(io::dump(a).back(), '\n');
}

TEST(Io, ReadFileReportsFormatErrors) {
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), format_error);
  const std::string path = ::testing::TempDir() + "resqpo_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(io::read_file(path), format_error);
  io::write_file(path, io::to_json(graphs::path(2)));
  EXPECT_EQ(io::graph_from_json(io::read_file(path)), graphs::path(2));
}

}  // namespace
}  // namespace resqpo
