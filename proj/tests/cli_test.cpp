#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "resqpo/io.hpp"

namespace resqpo {
namespace {

using io::json;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(RESQPO_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "resqpo_cli_" + name; }

std::string put(const std::string& name, const json& j) {
  io::write_file(tmp(name), j);
  return tmp(name);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("census --max-vertices").code, 2);
  EXPECT_EQ(run("overlaps --left x.json").code, 2);
}

TEST(Cli, OverlapsDirectP1) {
  const std::string a = put("pi1.json", io::to_json(graphs::path(1)));
  Outcome r = run("overlaps --left " + a + " --right " + a + " --constraints rigid --strategy direct");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "candidates: 8, correct: 5\n");
}

TEST(Cli, OverlapsImplicitP2) {
  const std::string a = put("pi2.json", io::to_json(graphs::path(2)));
  const std::string b = put("lambda3.json", io::to_json(graphs::cycle(3)));
  Outcome r = run("overlaps --left " + a + " --right " + b + " --strategy implicit");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "candidates: n/a (not enumerated), correct: 4\n");
}

TEST(Cli, OverlapsEmptyLeft) {
  const std::string a = put("empty.json", io::to_json(Graph()));
  const std::string b = put("lambda3.json", io::to_json(graphs::cycle(3)));
  Outcome r = run("overlaps --left " + a + " --right " + b + " --strategy dpe");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("correct: 1"), std::string::npos);
}

TEST(Cli, OverlapsOutputFile) {
  const std::string a = put("pi1.json", io::to_json(graphs::path(1)));
  const std::string out = tmp("ov_out.json");
  ASSERT_EQ(run("overlaps --left " + a + " --right " + a + " --strategy direct --out " + out).code, 0);
  json j = io::read_file(out);
  EXPECT_EQ(j["correct"], 5);
  EXPECT_EQ(j["candidates"], 8);
  EXPECT_EQ(j["overlaps"].size(), 5u);
}

TEST(Cli, OverlapsErrors) {
  const std::string fork = put("fork.json", io::to_json(Graph({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "a", "c"}})));
  const std::string a = put("pi1.json", io::to_json(graphs::path(1)));
  EXPECT_EQ(run("overlaps --left " + fork + " --right " + a).code, 3);
  EXPECT_EQ(run("overlaps --left " + fork + " --right " + a + " --constraints none").code, 0);
  std::ofstream(tmp("broken.json")) << "{\"vertices\": [";
  EXPECT_EQ(run("overlaps --left " + tmp("broken.json") + " --right " + a).code, 2);
  EXPECT_EQ(run("overlaps --left " + a + " --right " + a + " --strategy fastest").code, 2);
  EXPECT_EQ(run("overlaps --left /nonexistent.json --right " + a).code, 2);
}

TEST(Cli, CustomConstraintFile) {
  const std::string c = put("c.json", io::to_json(ConstraintSet({graphs::path(2)})));
  const std::string a = put("pi1.json", io::to_json(graphs::path(1)));
  Outcome r = run("overlaps --left " + a + " --right " + a + " --constraints " + c + " --strategy direct");
  EXPECT_EQ(r.code, 0);
  // Forbidding a 2-path drops the two head-to-tail gluings.
  EXPECT_EQ(r.out, "candidates: 8, correct: 6\n");
}

TEST(Cli, Compose) {
  Outcome r = run("compose --rule1 create-edge --rule2 delete-edge --constraints rigid --strategy dpe");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("admissible: 5,", 0), 0u) << r.out;
  r = run("compose --rule1 create-vertex --rule2 create-vertex");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("admissible: 1,", 0), 0u) << r.out;
  EXPECT_EQ(run("compose --rule1 no-such-rule --rule2 create-vertex").code, 2);
  EXPECT_EQ(run("compose --rule1 create-cycle:x --rule2 create-vertex").code, 2);
}

TEST(Cli, ComposeOutputCarriesNote) {
  const std::string out = tmp("comp.json");
  ASSERT_EQ(run("compose --rule1 create-edge --rule2 delete-edge --out " + out).code, 0);
  json j = io::read_file(out);
  EXPECT_EQ(j["admissible"], 5);
  EXPECT_EQ(j["matches"].size(), 5u);
  EXPECT_TRUE(j["note"].is_string());
}

// A rule file whose NAC is the rule input itself: the condition can never
// hold, so loading fails.
TEST(Cli, ComposeRejectsConstantFalseNac) {
  json rule = io::to_json(ConditionalRule(*rules::builtin("delete-edge"), {}));
  json ident = io::to_json(Morphism::identity(rules::builtin("delete-edge")->input()));
  rule["nacs"] = json::array({{{"P", rule["I"]}, {"embedding", ident}}});
  const std::string path = put("bad_nac.json", rule);
  EXPECT_EQ(run("compose --rule1 create-edge --rule2 " + path).code, 3);
}

TEST(Cli, ComposeRejectsNacOverIllegalContext) {
  Rule r = *rules::builtin("delete-edge");
  Graph p({"u", "v", "w"}, {{"e", "u", "v"}, {"f", "u", "w"}});
  ConditionalRule cr(r, {NegativeCondition(rules::inclusion(r.input(), p))});
  const std::string path = put("illegal_nac.json", io::to_json(cr));
  EXPECT_EQ(run("compose --rule1 create-edge --rule2 " + path).code, 3);
  EXPECT_EQ(run("compose --rule1 create-edge --rule2 " + path + " --constraints none").code, 0);
}

TEST(Cli, Macs) {
  EXPECT_EQ(run("macs --rule create-edge --constraints rigid").out, "nacs: 3\n");
  EXPECT_EQ(run("macs --rule delete-edge --constraints rigid").out, "nacs: 0\n");
  const std::string id = put("id_pi1.json", io::to_json(ConditionalRule(rules::identity(graphs::path(1)), {})));
  EXPECT_EQ(run("macs --rule " + id).out, "nacs: 0\n");
  const std::string out = tmp("macs.json");
  ASSERT_EQ(run("macs --rule create-edge --out " + out).code, 0);
  EXPECT_EQ(io::rule_from_json(io::read_file(out)).nacs.size(), 3u);
}

TEST(Cli, MacsRejectsIllegalRule) {
  Graph fork({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "a", "c"}});
  const std::string path = put("fork_rule.json", io::to_json(ConditionalRule(rules::identity(fork), {})));
  EXPECT_EQ(run("macs --rule " + path).code, 3);
}

TEST(Cli, Relations) { EXPECT_EQ(run("relations --constraints rigid").out, "relations: 8\n"); }

TEST(Cli, Census) {
  Outcome r = run("census --max-vertices 7 --loopless");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "k,count\n0,1\n1,1\n2,3\n3,5\n4,10\n5,16\n6,29\n7,45\n");
  EXPECT_EQ(run("census --max-vertices 3").out, "k,count\n0,1\n1,2\n2,10\n3,30\n");
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::string a = put("pi2.json", io::to_json(graphs::path(2)));
  const std::string b = put("lambda3.json", io::to_json(graphs::cycle(3)));
  const std::vector<std::string> cmds = {
      "overlaps --left " + a + " --right " + b + " --strategy direct --out ",
      "overlaps --left " + a + " --right " + b + " --strategy implicit --out ",
      "compose --rule1 create-edge --rule2 delete-edge --out ",
      "macs --rule create-cycle:2 --out ",
      "relations --out ",
  };
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const std::string f1 = tmp("rerun1_" + std::to_string(i)), f2 = tmp("rerun2_" + std::to_string(i));
    Outcome r1 = run(cmds[i] + f1), r2 = run(cmds[i] + f2);
    ASSERT_EQ(r1.code, 0) << cmds[i];
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(slurp(f1), slurp(f2)) << cmds[i];
    EXPECT_FALSE(slurp(f1).empty());
  }
}

TEST(Cli, Bench) {
  const std::string csv = tmp("bench.csv");
  Outcome r = run("bench --suite gcm2020 --experiments P1,P2 --strategies direct,implicit --timeout 30s --csv " + csv);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(csv));
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "experiment,strategy,candidates,correct,wall_time_mean_over_5,peak_memory");
  EXPECT_EQ(lines[1].rfind("P1,direct,8,5,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("P1,implicit,n/a,5,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("P2,direct,49,4,", 0), 0u);
  EXPECT_EQ(lines[4].rfind("P2,implicit,n/a,4,", 0), 0u);
}

TEST(Cli, BenchTimeoutAndErrors) {
  Outcome r = run("bench --suite gcm2020 --experiments P4 --strategies direct --timeout 200ms");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("P4,direct,timeout,timeout,timeout,"), std::string::npos) << r.out;
  EXPECT_EQ(run("bench --suite nope").code, 2);
  EXPECT_EQ(run("bench --suite gcm2020 --timeout soon").code, 2);
  EXPECT_EQ(run("bench --suite gcm2020 --strategies magic").code, 2);
}

}  // namespace
}  // namespace resqpo
