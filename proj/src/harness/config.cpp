#include <cstdlib>
#include <fstream>
#include <set>

#include "liplab/errors.hpp"
#include "liplab/harness.hpp"
#include "liplab/space_json.hpp"

namespace liplab {

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
  check_keys(j, {"space", "instance", "algorithm", "horizon", "seeds", "replicates", "base_seed", "mode", "parallelism",
                 "record_bets", "output_dir", "csv", "json"},
             "experiment config");
  for (const char* k : {"space", "instance", "algorithm"})
    if (!j.contains(k)) throw ValidationError(std::string("experiment config needs \"") + k + "\"");
  ExperimentConfig c;
  try {
    c.space = j.at("space");
    c.instance = j.at("instance");
    c.algorithm = j.at("algorithm");
    c.horizon = get_or<std::uint64_t>(j, "horizon", c.horizon);
    c.seeds = get_or(j, "seeds", c.seeds);
    c.replicates = get_or(j, "replicates", c.seeds.empty() ? c.replicates : c.seeds.size());
    c.base_seed = get_or<std::uint64_t>(j, "base_seed", 0);
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    c.parallelism = get_or(j, "parallelism", c.parallelism);
    c.record_bets = get_or(j, "record_bets", false);
    c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir);
    c.csv = get_or<std::string>(j, "csv", "");
    c.json = get_or<std::string>(j, "json", "");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("experiment config: ") + e.what());
  }
  if (c.horizon < 1) throw ValidationError("horizon must be >= 1");
  if (c.replicates < 1) throw ValidationError("replicates must be >= 1");
  if (c.parallelism < 1) throw ValidationError("parallelism must be >= 1");
  c.seed_list();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"space", space}, {"instance", instance}, {"algorithm", algorithm}, {"horizon", horizon},
                   {"seeds", seed_list()}, {"replicates", replicates}, {"base_seed", base_seed},
                   {"parallelism", parallelism}, {"record_bets", record_bets}, {"output_dir", output_dir}};
  if (mode) j["mode"] = to_string(*mode);
  if (!csv.empty()) j["csv"] = csv;
  if (!json.empty()) j["json"] = json;
  return j;
}

std::vector<std::uint64_t> ExperimentConfig::seed_list() const {
  std::vector<std::uint64_t> s = seeds;
  if (s.empty())
    for (std::size_t r = 0; r < replicates; ++r) s.push_back(base_seed + r);
  if (s.size() != replicates) throw ValidationError("seeds must list exactly one seed per replicate");
  if (std::set<std::uint64_t>(s.begin(), s.end()).size() != s.size()) throw ValidationError("replicate seeds must be distinct");
  return s;
}

std::string ExperimentConfig::resolved_output_dir() const {
  const char* env = std::getenv("LIPLAB_OUT_DIR");
  return env && *env ? std::string(env) : output_dir;
}

}  // namespace liplab
