#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "liplab/harness.hpp"

using namespace liplab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "liplab");
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("liplab_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"verify"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifySuites) {
  for (const char* s : {"kl", "ensemble", "lipschitz", "logt_kl"}) {
    auto r = run({"verify", s});
    EXPECT_EQ(r.code, 0) << s << "\n" << r.out << r.err;
  }
  auto r = run({"verify", "kl", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::accept(r.out));
  EXPECT_EQ(run({"verify", "nonsense"}).code, 1);
}

TEST(Cli, SimulateMissingConfig) {
  auto r = run({"simulate", "missing.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing.json"), std::string::npos);
}

TEST(Cli, SimulateWritesExports) {
  auto dir = scratch("sim");
  auto r = run({"simulate", std::string(LIPLAB_CONFIG_DIR) + "/ucb1_two_arm.json", "--out-dir", dir.string(), "--csv",
                "r.csv", "--json", "r.json", "-j", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(dir / "r.csv"));
  ASSERT_TRUE(fs::exists(dir / "r.json"));
  auto doc = read_json((dir / "r.json").string());
  EXPECT_TRUE(doc.contains("aggregate"));
  EXPECT_FALSE(read_csv((dir / "r.csv").string()).empty());

  auto f = run({"fit", (dir / "r.csv").string(), "--tail", "4"});
  EXPECT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("slope"), std::string::npos);
}

TEST(Cli, ShippedConfigsParse) {
  for (const auto& e : fs::directory_iterator(LIPLAB_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW(Experiment::build(ExperimentConfig::load(e.path().string()))) << e.path();
  }
}

TEST(Cli, Dimension) {
  auto r = run({"dimension", "--space", "interval", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  double v = nlohmann::json::parse(r.out)["value"].get<double>();
  EXPECT_NEAR(v, 1.0, 0.1);
  EXPECT_EQ(run({"dimension", "--space", "interval", "--lo", "5", "--hi", "6"}).code, 1);
  EXPECT_EQ(run({"dimension", "--space", "interval", "--mode", "weird"}).code, 1);
}

TEST(Cli, ForgeCertifies) {
  auto dir = scratch("forge");
  auto path = (dir / "lineage.json").string();
  auto r = run({"forge", "lineage", "--pairs", "500", "--rounds", "3", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = read_json(path);
  EXPECT_TRUE(doc["certificate"]["pass"].get<bool>());
  EXPECT_EQ(doc["instance"]["kind"], "lineage");
  EXPECT_EQ(run({"forge", "spiral"}).code, 1);
}

TEST(Cli, FitDegenerate) {
  auto dir = scratch("fit");
  std::ofstream((dir / "z.csv").string()) << "t,cum_regret,replicate,algorithm,instance,seed\n1,0,0,a,b,0\n2,0,0,a,b,0\n4,0,0,a,b,0\n";
  EXPECT_EQ(run({"fit", (dir / "z.csv").string()}).code, 2);
  EXPECT_EQ(run({"fit", (dir / "none.csv").string()}).code, 1);
}
