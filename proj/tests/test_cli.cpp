#include "qoct/graph.hpp"
#include "qoct/region.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(QOCT_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

size_t occurrences(const std::string& s, const std::string& needle) {
  size_t n = 0;
  for (size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

const char* kFigure = "a=6 d=5,3 dbar=4,4,4 dprime=3,5";

}  // namespace

TEST(Cli, RegionText) {
  auto r = run(std::string("region ") + kFigure);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("h1: 5\n"), std::string::npos);
  EXPECT_NE(r.out.find("w2: 8\n"), std::string::npos);
  EXPECT_NE(r.out.find("c2: 50\n"), std::string::npos);
  EXPECT_NE(r.out.find("layers: [[2,8],[2,9],[2,8]]\n"), std::string::npos);
}

TEST(Cli, RegionJson) {
  auto r = run(std::string("--json region ") + kFigure);
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["c1"], 37);
  EXPECT_EQ(j["c3"], 38);
  EXPECT_EQ(j["type"], 1);
}

TEST(Cli, MalformedSpecIsUsageError) {
  EXPECT_EQ(run("region a=6 d=5,x dbar=4 dprime=3").code, 2);
  EXPECT_EQ(run("region a=6 d=5 dbar=4").code, 2);
  EXPECT_EQ(run("region").code, 2);
}

TEST(Cli, DumpGraphRoundTrips) {
  auto r = run("--json region a=3 d=2 dbar=2 dprime=2 --dump-graph");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  ASSERT_TRUE(j.contains("graph"));
  auto g = qoct::graph_from_json(j["graph"]);
  qoct::Region reg(qoct::parse_spec("a=3 d=2 dbar=2 dprime=2"));
  EXPECT_EQ(g.num_vertices(), static_cast<int>(reg.cells().size()));
  std::string path = ::testing::TempDir() + "qoct_graph.json";
  std::ofstream(path) << r.out;
  auto c = run("--json count --graph " + path + " --backend all");
  ASSERT_EQ(c.code, 0);
  auto k = run("--json count a=3 d=2 dbar=2 dprime=2 --backend all");
  EXPECT_EQ(parse(c), parse(k));
}

TEST(Cli, CountAllBackendsAgree) {
  auto r = run("--json count --aztec 3,3 --backend all");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["brute"], "64");
  EXPECT_EQ(j["permanent"], "64");
  EXPECT_EQ(j["fkt"], "64");
  EXPECT_EQ(j["agree"], true);
}

TEST(Cli, CountGuardsBruteForce) {
  EXPECT_EQ(run("count --aztec 5,5 --backend brute --max-vertices 20").code, 2);
  auto r = run("--json count --aztec 5,5 --max-vertices 20");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["fkt"], "32768");
  EXPECT_EQ(run("count --aztec 2,2 --backend nope").code, 2);
  EXPECT_EQ(run("count").code, 2);
}

TEST(Cli, FormulaJson) {
  auto r = run("--json formula --which krat --params m=1 n=2 c=1 f=1 d=1");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_TRUE(j["value"].is_string());
  EXPECT_EQ(j["integrality_ok"], true);
  auto h = run("--json formula --which hexdent --params a=2 b=1 r=1,3");
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(parse(h)["value"], "2");
}

TEST(Cli, FormulaMatchesCount) {
  const char* spec = "a=1 d=3 dbar=4 dprime=3";
  auto f = run(std::string("--json formula --which thm32 --params ") + spec);
  ASSERT_EQ(f.code, 0);
  auto c = run(std::string("--json count ") + spec);
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(parse(f)["value"], parse(c)["fkt"]);
  EXPECT_EQ(parse(f)["variant_used"], "case b");
}

TEST(Cli, FormulaOutsideDomainIsUsageError) {
  EXPECT_EQ(run("formula --which thm1 --params a=1 d=3 dbar=4 dprime=3").code, 2);
  EXPECT_EQ(run("formula --which krat --params m=1 n=2").code, 2);
  EXPECT_EQ(run("formula --which krat --params m=1 n=x c=1 f=1 d=0").code, 2);
}

TEST(Cli, TransformVerify) {
  for (const char* rule : {"vs", "spider", "composite", "t1", "otrans-b", "hexpair"}) {
    auto r = run(std::string("--json --seed 7 transform --rule ") + rule + " --instances 3 --verify");
    ASSERT_EQ(r.code, 0) << rule;
    auto j = parse(r);
    ASSERT_EQ(j.size(), 3u);
    for (const auto& c : j) EXPECT_EQ(c["holds"], true) << rule;
  }
  EXPECT_EQ(run("transform --rule nope").code, 2);
}

TEST(Cli, TransformIsSeeded) {
  auto a = run("--json --seed 3 transform --rule star --instances 4");
  auto b = run("--json --seed 3 transform --rule star --instances 4");
  auto c = run("--json --seed 4 transform --rule star --instances 4");
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, SmallVerifyPasses) {
  auto r = run("--json verify --kind equal --max-w 3 --max-h 2 --max-k 1 --max-t 1 --max-l 1");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["kind"], "equal");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["mismatches"], 0);
  EXPECT_EQ(j["resolved"]["exponent"], "binom(h1+2h2+h3,2)");
  EXPECT_EQ(j["resolved"]["aztec-m"], "m=h2+h3");
}

TEST(Cli, EmptyVerifyFails) {
  auto r = run("--json verify --kind equal --max-w 1 --max-h 1 --max-k 1 --max-t 1 --max-l 1");
  ASSERT_EQ(r.code, 1);
  auto j = parse(r);
  EXPECT_EQ(j["pass"], false);
  EXPECT_TRUE(j["resolved"]["exponent"].is_null());
  EXPECT_TRUE(j["resolved"]["aztec-m"].is_null());
}

TEST(Cli, VerifyListIsSorted) {
  auto r = run("--json verify --kind unequal --max-w 3 --max-h 2 --max-k 1 --max-t 1 --max-l 1 --list --threads 2");
  auto s = run("--json verify --kind unequal --max-w 3 --max-h 2 --max-k 1 --max-t 1 --max-l 1 --list --threads 1");
  EXPECT_EQ(r.out, s.out);
  auto j = parse(r);
  EXPECT_GT(j["cases"].size(), 0u);
}

TEST(Cli, RenderFigure) {
  auto r = run(std::string("render ") + kFigure);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  qoct::Region reg(qoct::parse_spec(kFigure));
  size_t black = 0;
  for (const auto& c : reg.cells()) black += c.color == 1;
  EXPECT_EQ(occurrences(r.out, "fill=\"#555555\""), black);
  EXPECT_EQ(occurrences(r.out, "<polygon"), reg.cells().size() + 1);
  auto plain = run(std::string("render --no-diagonals ") + kFigure);
  EXPECT_LT(plain.out.size(), r.out.size());
}

TEST(Cli, RenderTiling) {
  auto r = run("render a=1 d=3 dbar=4 dprime=3 --tiling 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("stroke=\"#d62728\""), std::string::npos);
  auto over = run("render a=1 d=3 dbar=4 dprime=3 --tiling 8", true);
  EXPECT_EQ(over.code, 2);
  EXPECT_NE(over.out.find("out of range"), std::string::npos);
  auto none = run(std::string("render --tiling 0 ") + kFigure, true);
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.out.find("no tilings"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"--json region a=6 d=5,3 dbar=4,4,4 dprime=3,5 --dump-graph",
                           "render a=1 d=3 dbar=4 dprime=3 --tiling 5"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, VerifyAllGivesOneReportPerKind) {
  auto r = run("--json verify --kind all --max-w 3 --max-h 2 --max-k 1 --max-t 1 --max-l 1");
  auto j = parse(r);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[1]["kind"], "special");
}

TEST(Cli, BadSubcommandIsUsageError) {
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}
