#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liplab/errors.hpp"
#include "liplab/harness.hpp"

namespace liplab {

nlohmann::json trace_to_json(const RegretTrace& tr, bool full) {
  nlohmann::json cp = nlohmann::json::array();
  for (auto t : checkpoints(tr.horizon())) cp.push_back({{"t", t}, {"cum_regret", tr.regret_at(t)}});
  nlohmann::json j{{"algorithm", tr.algorithm}, {"instance", tr.instance}, {"seed", tr.seed},
                   {"replicate", tr.replicate}, {"mu_star", tr.mu_star}, {"horizon", tr.horizon()},
                   {"digest", trace_digest(tr)}, {"checkpoints", cp}, {"metadata", tr.metadata}};
  if (full) {
    j["expected_reward"] = tr.expected_reward;
    j["reward"] = tr.reward;
    j["cum_regret"] = tr.cum_regret;
  }
  return j;
}

RegretTrace trace_from_json(const nlohmann::json& j) {
  RegretTrace tr;
  try {
    tr.algorithm = j.at("algorithm").get<std::string>();
    tr.instance = j.at("instance").get<std::string>();
    tr.seed = j.at("seed").get<std::uint64_t>();
    tr.replicate = j.at("replicate").get<std::size_t>();
    tr.mu_star = j.at("mu_star").get<double>();
    tr.metadata = j.value("metadata", nlohmann::json::object());
    if (j.contains("cum_regret")) {
      tr.expected_reward = j.at("expected_reward").get<std::vector<double>>();
      tr.reward = j.at("reward").get<std::vector<double>>();
      tr.cum_regret = j.at("cum_regret").get<std::vector<double>>();
    } else {
      throw ValidationError("trace JSON has checkpoints only; export with full arrays to reload it");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad trace JSON: ") + e.what());
  }
  return tr;
}

std::string traces_to_csv(const std::vector<RegretTrace>& traces) {
  std::ostringstream out;
  out << "t,cum_regret,replicate,algorithm,instance,seed\n";
  char buf[64];
  for (const auto& tr : traces) {
    for (auto t : checkpoints(tr.horizon())) {
      std::snprintf(buf, sizeof buf, "%.17g", tr.regret_at(t));
      out << t << ',' << buf << ',' << tr.replicate << ',' << tr.algorithm << ',' << tr.instance << ',' << tr.seed << '\n';
    }
  }
  return out.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<RegretTrace>& traces) {
  auto out = open_out(path);
  out << traces_to_csv(traces);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,cum_regret,replicate,algorithm,instance,seed")
    throw ValidationError("'" + path + "' lacks the t,cum_regret,replicate,algorithm,instance,seed header");
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ValidationError(path + ":" + std::to_string(lineno) + ": expected 6 fields");
    try {
      rows.push_back(CsvRow{std::stoull(f[0]), std::stod(f[1]), std::stoul(f[2]), f[3], f[4], std::stoull(f[5])});
    } catch (const std::exception&) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

}  // namespace liplab
