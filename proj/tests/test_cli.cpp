#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fmlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FMLAB_FIXTURE_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, Logstar) {
  const auto r = run({"logstar", "--p", "2", "--n", "16"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3\n");
  EXPECT_EQ(run({"--p", "3", "logstar", "--n", "27"}).out, "2\n");
  EXPECT_EQ(run({"logstar", "--n", "0"}).code, fmlab::cli::kUsage);
}

TEST(Cli, ReduceSupportOnBundledFixture) {
  const auto r = run({"reduce-support", "--fixture", "matching_p2.json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "b = 0:1,1:1\n")) << r.out;

  const auto r3 = run({"reduce-support", "--fixture", fixture("matching_p3.json"), "--json"});
  ASSERT_EQ(r3.code, 0) << r3.err;
  const auto j = nlohmann::json::parse(r3.out);
  EXPECT_EQ(j["b"], "0:1,1:2");
  EXPECT_EQ(j["trace"][0]["h"], "1,1");
}

TEST(Cli, ReduceSupportPrimeConflict) {
  const auto r = run({"reduce-support", "--fixture", "matching_p2.json", "--p", "3"});
  EXPECT_EQ(r.code, fmlab::cli::kUsage);
  EXPECT_TRUE(contains(r.err, "conflicts")) << r.err;
}

TEST(Cli, UsageErrorsPrintHelp) {
  const auto r = run({"logstar", "--bogus"});
  EXPECT_EQ(r.code, fmlab::cli::kUsage);
  EXPECT_TRUE(contains(r.err, "--n")) << r.err;

  EXPECT_EQ(run({}).code, fmlab::cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, fmlab::cli::kUsage);
  EXPECT_EQ(run({"logstar", "--p", "4", "--n", "3"}).code, fmlab::cli::kUsage);
  EXPECT_EQ(run({"verify-all", "--horizon", "0"}).code, fmlab::cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Act) {
  const auto r = run({"act", "--p", "3", "--horizon", "2", "--x", R"js({"atom":"(1|1:2)"})js", "--g", "0,2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(2|1:2)\n");
  EXPECT_EQ(run({"act", "--horizon", "3", "--x", R"js({"atom":"(0|0:1)"})js", "--g", "1,0"}).code, fmlab::cli::kUsage);
  EXPECT_EQ(run({"act", "--horizon", "2", "--x", R"js({"atom":"(0|5:1)"})js", "--g", "1,0"}).code, fmlab::cli::kUsage);
}

TEST(Cli, OrbitStabilizerSupport) {
  const std::string x = R"js({"tuple":[{"atom":"(0|0:1)"},{"atom":"(0|1:1)"}]})js";
  const auto orb = run({"orbit", "--horizon", "2", "--x", x, "--json"});
  ASSERT_EQ(orb.code, 0) << orb.err;
  EXPECT_EQ(nlohmann::json::parse(orb.out)["size"], 4);

  EXPECT_EQ(run({"orbit", "--horizon", "2", "--x", x, "--A", "0:1;1:1"}).out, "<(0|0:1) (0|1:1)>\n");
  EXPECT_EQ(run({"orbit", "--horizon", "2", "--x", x, "--A", "0:1,1:1"}).out,
            "<(0|0:1) (0|1:1)>\n<(1|0:1) (1|1:1)>\n");

  const auto stab = run({"stabilizer", "--horizon", "2", "--x", R"js({"atom":"(0|0:1)"})js"});
  EXPECT_EQ(stab.out, "order 2 (dimension 1)\n0,1\n");

  EXPECT_EQ(run({"support-check", "--horizon", "2", "--x", x, "--A", "0:1;1:1"}).out, "true\n");
  EXPECT_EQ(run({"support-check", "--horizon", "2", "--x", x, "--A", "0:1,1:1"}).out, "false\n");
}

TEST(Cli, Density) {
  EXPECT_EQ(run({"density", "--A", "0:1;1:1;0:1,1:1", "--k", "1"}).out, "2\n");
  const auto prof = run({"density", "--A", "0:1;1:1;2:1", "--profile", "2"});
  EXPECT_EQ(prof.out, "k,d_k,logstar_dk,logstar_k\n1,2,1,0\n2,3,2,1\n");
  EXPECT_EQ(run({"density", "--A", "0:1"}).code, fmlab::cli::kUsage);
}

TEST(Cli, ExtractThin) {
  const auto r = run({"extract-thin", "--prefix-sums", "--count", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "indices: 0 3 5\n")) << r.out;

  const auto f = run({"extract-thin", "--stream", "stream_prefix_sums_p2.json", "--count", "4", "--json"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(nlohmann::json::parse(f.out)["indices"].dump(), "[0,3,5,17]");

  const auto short_window = run({"extract-thin", "--prefix-sums", "--count", "4", "--window", "12"});
  EXPECT_EQ(short_window.code, fmlab::cli::kResource);
}

TEST(Cli, Certify) {
  EXPECT_EQ(run({"certify", "--certificate", "certificate_union_p2.json"}).out, "valid\n");
  const auto bad = run({"certify", "--certificate", R"js({"kind":"extracted-stream","p":2,"checkpoints":[[0,1],[2,1]]})js"});
  EXPECT_EQ(bad.code, fmlab::cli::kCheckFailed);
  EXPECT_TRUE(contains(bad.out, "checkpoint 1")) << bad.out;
  EXPECT_EQ(run({"certify", "--certificate", "{not json"}).code, fmlab::cli::kFailure);
  EXPECT_EQ(run({"certify", "--certificate", "no_such_file.json"}).code, fmlab::cli::kUsage);
}

TEST(Cli, TowerAndRefutation) {
  const auto t = run({"tower", "--N", "2"});
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(contains(t.out, "X_0 = {(0|0:1) (1|0:1)}\n")) << t.out;
  EXPECT_EQ(run({"tower", "--N", "13"}).code, fmlab::cli::kResource);
  EXPECT_EQ(run({"tower", "--N", "13", "--cap-tower", "13"}).code, 0);
  EXPECT_EQ(run({"tower", "--p", "3"}).code, fmlab::cli::kUsage);

  const auto r = run({"refute-pcf", "--N", "4", "--S", "0,2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["i"], 1);
  EXPECT_EQ(j["g"], "0,1,0,0");
  EXPECT_EQ(j["levels"].size(), 3u);
  EXPECT_EQ(run({"refute-pcf", "--N", "2", "--S", "0,1"}).code, fmlab::cli::kUsage);
}

TEST(Cli, TowerMatchesBundledFixture) {
  const auto r = run({"tower", "--N", "3", "--json"});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(fixture("tower_N3.json"));
  ASSERT_TRUE(in.good());
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(in));
}
