#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfnear/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::vector<const char*> argv{"mfnear"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mfnear::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const json& find_cell(const json& j, const std::string& column) {
  for (const auto& c : j["cells"]) {
    if (c["column"] == column) return c;
  }
  throw std::runtime_error("missing " + column);
}

}  // namespace

TEST(Cli, FormulasExamples) {
  auto r = run({"formulas", "--two-n", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(find_cell(j, "mfc_lower")["log2_text"], "77.864341");
  EXPECT_EQ(find_cell(j, "mfc_upper")["log2_text"], "77.865447");
  j = json::parse(run({"formulas", "--two-n", "4"}).out);
  EXPECT_EQ(find_cell(j, "mfsp")["exact"], "896");
  j = json::parse(run({"formulas", "--two-n", "2"}).out);
  EXPECT_EQ(find_cell(j, "near_mf")["exact"], "0");
  EXPECT_EQ(run({"formulas", "--two-n", "7"}).code, 2);
  EXPECT_EQ(run({"formulas", "--two-n", "26"}).code, 2);
}

TEST(Cli, TableCsv) {
  const auto r = run({"table", "--id", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,12,expected_m,1 + 2^{-133.377320}"), std::string::npos);
  const auto t1 = run({"table", "--id", "1", "--format", "csv"});
  EXPECT_NE(t1.out.find("1,24,tail,5.7338671451801090"), std::string::npos);
  const auto t2 = run({"table", "--id", "2", "--format", "text"});
  EXPECT_NE(t2.out.find("2n=6 mf ≈ 2^{23.299}"), std::string::npos);
  EXPECT_NE(t2.out.find("external"), std::string::npos);
  EXPECT_EQ(run({"table", "--id", "9"}).code, 2);
}

TEST(Cli, TableGoesToOutputDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "mfnear_cli_test";
  std::filesystem::remove_all(dir);
  ::setenv("MFNEAR_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = run({"table", "--id", "4", "--format", "csv"});
  ::unsetenv("MFNEAR_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(dir / "table4.csv");
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_NE(s.str().find("4,8,lower"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, NearCountAndBrute) {
  auto r = run({"near", "--pi", "[0,1,2,3]", "--phi", "0000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["count"], "60");
  const auto crit = json::parse(run({"near", "--pi", "[0,1,2,3]", "--phi", "0000", "--mode", "realize"}).out);
  const auto hex = json::parse(r.out)["parameters"]["hex"].get<std::string>();
  const auto brute = json::parse(run({"near", "--hex", hex, "--brute", "--mode", "realize"}).out);
  EXPECT_EQ(crit["realized"], brute["realized"]);
  EXPECT_EQ(crit["realized"].size(), 60U);
  r = run({"near", "--pi", "[0,1,1,3]", "--phi", "0000"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"near", "--hex", "zz"}).code, 2);
}

TEST(Cli, NearListAndParents) {
  const auto list = json::parse(run({"near", "--pi", "[3,0,2,1,7,5,6,4]", "--phi", "01101000", "--mode", "list"}).out);
  EXPECT_EQ(list["count"], list["witnesses"].size());
  const auto p = run({"near", "--pi", "[3,0,2,1,7,5,6,4]", "--phi", "01101000", "--parents"});
  ASSERT_EQ(p.code, 0) << p.err;
  const auto j = json::parse(p.out);
  EXPECT_EQ(j["parent_count"], 24);
  EXPECT_EQ(j["witness"]["L"]["basis"].size(), 2U);
}

TEST(Cli, VerifySums) {
  const auto r = run({"verify", "--suite", "sums", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["parameters"]["seed"], 1);
  for (const auto& o : j["outcomes"]) EXPECT_FALSE(o.contains("seconds"));
}

TEST(Cli, VerifyCensus) {
  const auto r = run({"verify", "--suite", "census", "--seed", "1", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("near_mf = 512"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "--suite", "coincidence", "--seed", "3", "--trials", "4"};
  auto a = args;
  a.push_back("--jobs");
  a.push_back("1");
  auto b = args;
  b.push_back("--jobs");
  b.push_back("3");
  EXPECT_EQ(run(a).out, run(b).out);
}

TEST(Cli, Sample) {
  auto r = run({"sample", "--kind", "near-average", "--two-n", "6", "--trials", "50", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["estimate"]["samples"], 50);
  EXPECT_EQ(j["target"], "2328/5");
  EXPECT_EQ(run({"sample", "--kind", "near-average", "--two-n", "6", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"sample", "--kind", "m-size", "--two-n", "10", "--trials", "5"}).code, 2);
  r = run({"sample", "--kind", "m-size", "--two-n", "4", "--trials", "20", "--seed", "2", "--timings"});
  ASSERT_EQ(r.code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nothing"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
