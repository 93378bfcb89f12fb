#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "liplab/harness.hpp"

using namespace liplab;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> golden_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(LIPLAB_GOLDEN_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

bool updating() { return std::getenv("LIPLAB_UPDATE_GOLDEN") != nullptr; }

}  // namespace

TEST(Golden, EveryAlgorithmHasATrace) {
  std::set<std::string> have;
  for (const auto& p : golden_files()) have.insert(read_json(p.string())["config"]["algorithm"]["name"].get<std::string>());
  for (const auto& name : {"ucb1", "phased_ucb1", "well_ordered", "cb_bandit", "completion", "double_feedback",
                           "naive_experts", "maxminlcd"})
    EXPECT_TRUE(have.count(name)) << name;
}

TEST(Golden, TracesReproduce) {
  for (const auto& path : golden_files()) {
    SCOPED_TRACE(path.filename().string());
    auto doc = read_json(path.string());
    auto cfg = ExperimentConfig::from_json(doc["config"]);
    auto serial = run_replicates(cfg, 1);
    auto pooled = run_replicates(cfg, 4);
    ASSERT_TRUE(serial.complete());
    std::vector<std::string> digests;
    nlohmann::json finals = nlohmann::json::array();
    for (std::size_t i = 0; i < serial.traces.size(); ++i) {
      digests.push_back(trace_digest(serial.traces[i]));
      finals.push_back(serial.traces[i].regret_at(cfg.horizon));
      EXPECT_EQ(trace_digest(pooled.traces[i]), digests.back());
    }
    if (updating()) {
      doc["digests"] = digests;
      doc["final_regret"] = finals;
      std::ofstream(path) << doc.dump(2) << '\n';
      continue;
    }
    EXPECT_EQ(doc["digests"].get<std::vector<std::string>>(), digests);
  }
}
