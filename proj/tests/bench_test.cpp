#include <gtest/gtest.h>

#include "resqpo/bench.hpp"

namespace resqpo {
namespace {

const ForbiddenRelationSet& rigid_relations() {
  static const ForbiddenRelationSet s = decompose_forbidden_relations(rigid_constraints());
  return s;
}

TEST(Bench, SuiteLookup) {
  auto s = bench::suite("gcm2020");
  ASSERT_TRUE(s);
  ASSERT_EQ(s->size(), 4u);
  EXPECT_EQ((*s)[3].left, graphs::path(7));
  EXPECT_EQ((*s)[3].right, graphs::cycle(8));
  EXPECT_FALSE(bench::suite("nope"));
}

TEST(Bench, IsolatedRowReportsCountsAndMemory) {
  auto p2 = (*bench::suite("gcm2020"))[1];
  bench::Row r = bench::run(p2, Strategy::direct, rigid_relations(), std::chrono::seconds(30), 2);
  EXPECT_TRUE(r.failure.empty()) << r.failure;
  EXPECT_FALSE(r.timed_out);
  ASSERT_TRUE(r.candidates);
  EXPECT_EQ(*r.candidates, 49u);
  EXPECT_EQ(r.correct, 4u);
  ASSERT_TRUE(r.peak_kib);
  EXPECT_GT(*r.peak_kib, 0);
}

TEST(Bench, InProcessRowMatchesIsolated) {
  auto p1 = (*bench::suite("gcm2020"))[0];
  bench::Row a = bench::run(p1, Strategy::dpe, rigid_relations(), std::chrono::seconds(30), 1, true);
  bench::Row b = bench::run(p1, Strategy::dpe, rigid_relations(), std::chrono::seconds(30), 1, false);
  EXPECT_EQ(a.candidates, b.candidates);
  EXPECT_EQ(a.correct, b.correct);
  EXPECT_EQ(a.correct, 5u);
}

TEST(Bench, TimeoutRow) {
  auto p4 = (*bench::suite("gcm2020"))[3];
  bench::Row r = bench::run(p4, Strategy::direct, rigid_relations(), std::chrono::milliseconds(100), 5);
  EXPECT_TRUE(r.timed_out);
  std::string line = bench::csv_line(r);
  EXPECT_EQ(line.rfind("P4,direct,timeout,timeout,timeout,", 0), 0u) << line;
}

TEST(Bench, CsvShape) {
  EXPECT_EQ(bench::csv_header(), "experiment,strategy,candidates,correct,wall_time_mean_over_5,peak_memory\n");
  bench::Row r;
  r.experiment = "P3";
  r.strategy = Strategy::implicit;
  r.correct = 6;
  r.mean_seconds = 0.25;
  EXPECT_EQ(bench::csv_line(r), "P3,implicit,n/a,6,0.250000,unsupported\n");
}

}  // namespace
}  // namespace resqpo
