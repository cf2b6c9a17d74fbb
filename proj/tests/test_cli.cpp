#include "unef/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using unef::cli::json;

namespace {

struct Call {
  int code;
  json doc;
  std::string err;
};

Call call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = unef::cli::run(args, out, err);
  json doc = out.str().empty() ? json(nullptr) : json::parse(out.str());
  return {code, doc, err.str()};
}

const std::string kSig6 = R"({"N":3,"n":5,"m":[4,2,3]})";

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("unef_test_" + name);
}

}  // namespace

TEST(Cli, Envelope) {
  auto c = call({"slope", "generic", "--sig", kSig6, "--rank", "2"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.doc["command"], "slope generic");
  EXPECT_EQ(c.doc["seed"], 0);
  EXPECT_EQ(c.doc["result"]["slope"]["r"], json({2, 3, 3}));
  EXPECT_FALSE(c.doc.contains("error"));
}

TEST(Cli, InputErrorsExitTwo) {
  auto bad_json = call({"slope", "generic", "--sig", "{\"N\":3,", "--rank", "2"});
  EXPECT_EQ(bad_json.code, 2);
  EXPECT_EQ(bad_json.doc["error"]["kind"], "input");
  auto bad_sig = call({"slope", "generic", "--sig", R"({"N":2,"n":3,"m":[1]})", "--rank", "1"});
  EXPECT_EQ(bad_sig.code, 2);
  auto missing = call({"slope", "generic", "--sig", R"({"N":2,"m":[1,1]})"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.doc["error"]["message"].get<std::string>().find("schema violation"), std::string::npos);
  auto not_prime = call({"cone", "rays", "--p", "4", "--a", "1,1"});
  EXPECT_EQ(not_prime.code, 2);
  auto unknown = call({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  auto action = call({"check", "sideways", "--sig", kSig6});
  EXPECT_EQ(action.code, 2);
  auto ample_partial = call({"check", "partial", "--mode", "ample", "--sig",
                             R"({"N":1,"n":3,"m":[1],"weight":{"kind":"block","blocks":[[[1,"1"],[2,"0"]]]}})"});
  EXPECT_EQ(ample_partial.code, 2);
  EXPECT_FALSE(ample_partial.err.empty());
}

TEST(Cli, PrimeInsideSignatureWins) {
  auto c = call({"check", "flag", "--p", "5", "--sig",
                 R"({"N":1,"n":2,"m":[1],"p":3,"weight":{"kind":"flag","k":[["1","0"]]}})"});
  ASSERT_EQ(c.code, 0) << c.doc.dump();
  EXPECT_EQ(c.doc["result"]["p"], 3);
}

TEST(Cli, CheckVerdicts) {
  auto c = call({"check", "X", "--p", "2", "--mode", "ample", "--sig",
                 R"({"N":2,"n":2,"m":[1,1],"weight":{"kind":"parallelX","k":[1,1]}})"});
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(c.doc["result"]["verdict"]["satisfied"].get<bool>());
  auto m = call({"check", "minimal", "--p", "3", "--sig",
                 R"({"N":2,"n":3,"m":[2,3],"weight":{"kind":"minimal","place":2,"j":1,"k":["1/1"],"alpha":"-1/1"}})"});
  ASSERT_EQ(m.code, 0) << m.doc.dump();
  EXPECT_TRUE(m.doc["result"]["crosscheck"]["agrees"].get<bool>());
}

TEST(Cli, SeedsAreReproducible) {
  std::vector<std::string> a{"zip", "sample", "--p", "5", "--sig", kSig6, "--seed", "7"};
  auto x = call(a), y = call(a);
  EXPECT_EQ(x.doc, y.doc);
  a.back() = "8";
  EXPECT_NE(call(a).doc["result"], x.doc["result"]);
}

TEST(Cli, OutFile) {
  auto path = tmp("out.json");
  std::filesystem::remove(path);
  auto c = call({"cone", "rays", "--p", "2", "--a", "1,2,1", "--out", path.string()});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(c.doc.is_null());
  std::ifstream in(path);
  json doc = json::parse(in);
  EXPECT_EQ(doc["command"], "cone rays");
  std::filesystem::remove(path);
}

TEST(Cli, SvgSideChannel) {
  auto path = tmp("d.svg");
  std::filesystem::remove(path);
  auto c = call({"slope", "diagram", "--sig", kSig6, "--ranks", "2,1,0,2", "--svg", path.string()});
  ASSERT_EQ(c.code, 0);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.rfind("<svg", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, BatchKeepsOrderAndWorstCode) {
  auto path = tmp("batch.json");
  {
    std::ofstream f(path);
    f << json::array({json::array({"slope", "generic", "--sig", kSig6, "--rank", "2"}),
                      json::array({"cone", "rays", "--p", "4", "--a", "1"}),
                      json::array({"zip", "sample", "--p", "3", "--sig", kSig6})})
             .dump();
  }
  auto c = call({"--batch", path.string(), "--seed", "5"});
  EXPECT_EQ(c.code, 2);
  auto& r = c.doc["result"];
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0]["exit_code"], 0);
  EXPECT_EQ(r[0]["output"]["command"], "slope generic");
  EXPECT_EQ(r[1]["exit_code"], 2);
  EXPECT_EQ(r[2]["output"]["seed"], 5);
  auto again = call({"--batch", path.string(), "--seed", "5"});
  EXPECT_EQ(again.doc, c.doc);
  std::filesystem::remove(path);

  auto nested = call({"--batch", R"([["--batch","x"]])"});
  EXPECT_EQ(nested.code, 2);
}

TEST(Cli, SelftestPasses) {
  auto c = call({"selftest"});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(c.doc["result"]["passed"].get<bool>());
}

TEST(Cli, WeylStrata) {
  auto c = call({"weyl", "strata", "--sig", R"({"N":1,"n":3,"m":[1]})"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.doc["result"]["nodes"].size(), 3u);
  auto t = call({"weyl", "strata", "--sig", R"({"N":1,"n":3,"m":[1]})", "--order", "sideways"});
  EXPECT_EQ(t.code, 2);
}
