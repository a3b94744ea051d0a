#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JSPRR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

std::string instance_path() {
  static const std::string path = [] {
    const auto p = temp("jsprr_cli_instance.json").string();
    run("generate --seed 4 --scale 0.1 --out " + p);
    return p;
  }();
  return path;
}

}  // namespace

TEST(Cli, GenerateIsDeterministic) {
  const auto a = run("generate --seed 5 --users 30");
  const auto b = run("generate --users 30 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["users"].size(), 30u);
  EXPECT_NE(run("generate --seed 6 --users 30").out, a.out);
}

TEST(Cli, GenerateFromConfigFile) {
  const auto cfg = temp("jsprr_cli_cfg.json");
  std::ofstream(cfg) << R"({"n_users": 12, "n_services": 5, "seed": 8})";
  const auto r = run("generate --config " + cfg.string());
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["users"].size(), 12u);
  EXPECT_EQ(doc["services"].size(), 5u);
  std::ofstream(cfg) << R"({"n_users": 12, "bogus": 1})";
  EXPECT_EQ(run("generate --config " + cfg.string()).code, 2);
}

TEST(Cli, SolveJsonAndCsv) {
  const auto j = run("solve " + instance_path() + " --trials 5 --emit-raw");
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["trials"].size(), 5u);
  EXPECT_TRUE(doc["result"].contains("raw_report"));
  EXPECT_TRUE(doc["result"]["report"]["feasible"].get<bool>());
  const auto c1 = run("solve " + instance_path() + " --trials 5 --format csv --seed 3");
  const auto c2 = run("solve " + instance_path() + " --trials 5 --format csv --seed 3");
  EXPECT_EQ(c1.out, c2.out);
  EXPECT_EQ(c1.out.rfind("algo,seed,cloud_load", 0), 0u);
}

TEST(Cli, DumpLp) {
  const auto path = temp("jsprr_cli.lp");
  ASSERT_EQ(run("solve " + instance_path() + " --trials 1 --dump-lp " + path.string()).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("Subject To"), std::string::npos);
}

TEST(Cli, Baselines) {
  const auto g = run("baseline " + instance_path() + " --algo greedy");
  ASSERT_EQ(g.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(g.out).contains("cloud_load"));
  EXPECT_EQ(run("baseline " + instance_path() + " --algo oracle").code, 2);  // too large
  EXPECT_EQ(run("baseline " + instance_path() + " --algo nonoverlap").code, 2);
}

TEST(Cli, AnalyzeCounterexample) {
  const auto r = run("analyze --counterexample");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["f_B_plus_e12"], 2);
  EXPECT_EQ(doc["f_A_plus_e12"], 1);
}

TEST(Cli, AnalyzeRejectsNonUnit) { EXPECT_EQ(run("analyze " + instance_path()).code, 2); }

TEST(Cli, Periods) {
  const auto r = run("periods " + instance_path() + " --periods 2 --churn 0.3 --budget 50 --trials 3");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["periods"].size(), 2u);
  for (const auto& p : doc["periods"]) EXPECT_LE(p["adaptation_spend"].get<double>(), 50.0);
  EXPECT_EQ(run("periods " + instance_path() + " --budget -1").code, 2);
}

TEST(Cli, ExperimentCsvDeterministicAndReport) {
  const std::string args = "experiment --scale 0.05 --num-seeds 2 --trials 3 --values 250,750";
  const auto a = run(args);
  const auto b = run(args + " --workers 2");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("sweep,algo,seed,cloud_load,util_storage,util_compute,util_up,util_down,runtime_ms\n", 0), 0u);
  const auto json_path = temp("jsprr_cli_table.json");
  ASSERT_EQ(run(args + " --format json --out " + json_path.string()).code, 0);
  const auto rep = run("report " + json_path.string());
  ASSERT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("storage,250,rr,2,0,"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("solve /nonexistent.json").code, 2);
  EXPECT_EQ(run("experiment --sweep latency").code, 2);
  const auto bad = temp("jsprr_cli_bad.json");
  std::ofstream(bad) << R"({"services":[],"stations":[],"users":[{"id":0,"coverage":[3],"service":0}]})";
  EXPECT_EQ(run("solve " + bad.string()).code, 2);
}
