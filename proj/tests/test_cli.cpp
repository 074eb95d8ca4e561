#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SPECVARAN_TOOL + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json body(const Run& r) {
  auto j = nlohmann::json::parse(r.out);
  for (auto& rec : j["records"]) rec.erase("runtime_ms");
  return j;
}

std::string scenario(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ListsFixtures) {
  const auto r = run("paper-examples --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("psd-critical-cone"), std::string::npos);
  EXPECT_NE(r.out.find("nsd-second-tangent"), std::string::npos);
}

TEST(Cli, FixturesPass) {
  const auto r = run("paper-examples --seed 42");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(" 0 fail"), std::string::npos);
}

TEST(Cli, SelectedFixtureOnly) {
  const auto r = run("paper-examples psd-critical-cone --json -");
  ASSERT_EQ(r.code, 0);
  const auto j = body(r);
  EXPECT_EQ(j["summary"]["total"], 4);
  for (const auto& rec : j["records"]) {
    EXPECT_EQ(rec["name"].get<std::string>().rfind("example.psd-critical-cone.", 0), 0u);
  }
}

TEST(Cli, UnknownFixtureIsAConfigError) { EXPECT_EQ(run("paper-examples no-such-id").code, 2); }

TEST(Cli, BadFlagsAreConfigErrors) {
  EXPECT_EQ(run("verify-expansions --inject-fault nonsense").code, 2);
  EXPECT_EQ(run("verify-expansions --t-grid 1e-2,abc").code, 2);
  EXPECT_EQ(run("verify-expansions --n 0").code, 2);
  EXPECT_EQ(run("check-optimality").code, 2);
  EXPECT_EQ(run("check-optimality --scenario /nonexistent.json").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, SameSeedSameReport) {
  const auto a = run("verify-chain-rules --seed 42 --trials 10 --json -");
  const auto b = run("verify-chain-rules --seed 42 --trials 10 --json -");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(body(a), body(b));
  const auto c = run("verify-chain-rules --seed 43 --trials 10 --json -");
  EXPECT_NE(body(a)["records"], body(c)["records"]);
}

TEST(Cli, SeedFallsBackToEnvironment) {
  const auto flag = run("verify-expansions --seed 42 --trials 5 --json -");
  const auto env = run("verify-expansions --trials 5 --json -", "SPECVARAN_SEED=42");
  ASSERT_EQ(flag.code, 0);
  EXPECT_EQ(body(flag), body(env));
  EXPECT_EQ(body(env)["config"]["seed"], 42);
  EXPECT_EQ(run("verify-expansions --trials 1", "SPECVARAN_SEED=abc").code, 2);
}

TEST(Cli, ExpansionFaultsFail) {
  EXPECT_EQ(run("verify-expansions --seed 42 --trials 20").code, 0);
  EXPECT_EQ(run("verify-expansions --seed 42 --trials 20 --inject-fault lambda-first").code, 1);
  EXPECT_EQ(run("verify-expansions --seed 42 --trials 20 --inject-fault lambda-second").code, 1);
}

TEST(Cli, ExpansionsScalarCasePasses) {
  const auto r = run("verify-expansions --n 1 --trials 5 --json -");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(body(r)["summary"]["fail"], 0);
}

TEST(Cli, ChainRuleFaultsFail) {
  EXPECT_EQ(run("verify-chain-rules --seed 42 --trials 20 --inject-fault subderivative").code, 1);
  EXPECT_EQ(run("verify-chain-rules --seed 42 --trials 20 --inject-fault second-tangent").code, 1);
}

TEST(Cli, OptimalityScenarios) {
  EXPECT_EQ(run("check-optimality --seed 42 --scenario " + scenario("projection_nsd.json")).code, 0);
  const auto r = run("check-optimality --seed 42 --json - --scenario " + scenario("projection_nsd_perturbed.json"));
  EXPECT_EQ(r.code, 1);
  const auto j = body(r);
  for (const auto& rec : j["records"]) {
    if (rec["name"] == "optimality.stationarity") EXPECT_EQ(rec["computed"], false);
  }
}

TEST(Cli, SecondSubderivativeScenarios) {
  EXPECT_EQ(run("second-subderivative --seed 42 --scenario " + scenario("lambda_max_second.json")).code, 0);
  EXPECT_EQ(run("second-subderivative --seed 42 --scenario " + scenario("nsd_second.json")).code, 0);
  EXPECT_EQ(run("second-subderivative --seed 42 --inject-fault sigma --scenario " + scenario("nsd_second.json")).code,
            1);
}

TEST(Cli, JsonFileOutput) {
  const std::string path = testing::TempDir() + "specvaran_report.json";
  const auto r = run("paper-examples nsd-prox --json " + path);
  EXPECT_EQ(r.code, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  const auto j = nlohmann::json::parse(f);
  std::fclose(f);
  EXPECT_EQ(j["command"], "paper-examples");
  EXPECT_EQ(j["schema"], 1);
}
