#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/instances.hpp"
#include "liplab/session.hpp"

namespace liplab {

struct ExperimentConfig {
  nlohmann::json space;
  nlohmann::json instance;
  nlohmann::json algorithm;
  std::uint64_t horizon = 1024;
  std::vector<std::uint64_t> seeds;  // one per replicate; default base_seed + r
  std::size_t replicates = 1;
  std::uint64_t base_seed = 0;
  std::optional<FeedbackMode> mode;  // checked against the algorithm when given
  std::size_t parallelism = 1;
  bool record_bets = false;
  std::string output_dir = ".";
  std::string csv;   // file names inside output_dir; empty = skip
  std::string json;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;
  // Seeds actually used, validated distinct.
  std::vector<std::uint64_t> seed_list() const;
  // LIPLAB_OUT_DIR when set, else output_dir.
  std::string resolved_output_dir() const;
};

struct RegretTrace {
  std::string algorithm;
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t replicate = 0;
  double mu_star = 0.0;
  std::vector<double> expected_reward;  // mu(bet_t)
  std::vector<double> reward;           // pi_t(bet_t)
  std::vector<double> cum_regret;       // sum_{s<=t} (mu* - mu(bet_s))
  std::vector<Point> bets;              // when recorded
  nlohmann::json metadata;

  std::uint64_t horizon() const { return cum_regret.size(); }
  double regret_at(std::uint64_t t) const { return t == 0 ? 0.0 : cum_regret.at(t - 1); }
};

// Everything a match needs, built once and shared by replicates.
struct Experiment {
  SpacePtr space;
  InstancePtr instance;
  nlohmann::json algorithm;
  std::optional<FeedbackMode> mode;

  static Experiment build(const ExperimentConfig& cfg);
};

// Round t (1-based) draws pi_t with key Rng(seed).split("instance-noise").split(t);
// the algorithm is seeded from Rng(seed).split("algorithm").
RegretTrace run_match(const Experiment& ex, std::uint64_t horizon, std::uint64_t seed, bool record_bets = false);
RegretTrace run_match(const ExperimentConfig& cfg);

std::uint64_t round_key(std::uint64_t seed, std::uint64_t t);
std::uint64_t algorithm_seed(std::uint64_t seed);

// Checkpoints 1, 2, 4, ..., 2^floor(log2 horizon).
std::vector<std::uint64_t> checkpoints(std::uint64_t horizon);

struct Aggregate {
  std::vector<std::uint64_t> t;
  std::vector<double> mean, stderr_, min, max, q10, q50, q90;
  std::size_t replicates = 0;
  nlohmann::json to_json() const;
};

Aggregate aggregate(const std::vector<RegretTrace>& traces);

struct ReplicateResult {
  std::vector<RegretTrace> traces;  // in seed order
  Aggregate summary;
  std::vector<std::string> failures;  // "replicate i: message"
  bool complete() const { return failures.empty(); }
};

ReplicateResult run_replicates(const ExperimentConfig& cfg, std::size_t parallelism);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  double residual = 0.0;  // RMS of log residuals
  std::size_t points = 0;
  bool degenerate = false;
  std::string note;
  nlohmann::json to_json() const;
};

// Least squares of ln R on ln t over the points with t in [t_lo, t_hi].
ExponentFit fit_exponent(const std::vector<double>& t, const std::vector<double>& r, double t_lo, double t_hi);
ExponentFit fit_exponent(const RegretTrace& trace, double t_lo, double t_hi);
// Fit over the last `count` power-of-two checkpoints.
ExponentFit fit_tail(const RegretTrace& trace, std::size_t count);

// 64-bit FNV-1a over the bit patterns of the trace arrays, as 16 hex digits.
std::string trace_digest(const RegretTrace& trace);

nlohmann::json trace_to_json(const RegretTrace& trace, bool full_arrays = false);
RegretTrace trace_from_json(const nlohmann::json& j);

// CSV columns t,cum_regret,replicate,algorithm,instance,seed at the checkpoints.
std::string traces_to_csv(const std::vector<RegretTrace>& traces);
void write_csv(const std::string& path, const std::vector<RegretTrace>& traces);
void write_json(const std::string& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::string& path);

struct CsvRow {
  std::uint64_t t;
  double cum_regret;
  std::size_t replicate;
  std::string algorithm, instance;
  std::uint64_t seed;
};
std::vector<CsvRow> read_csv(const std::string& path);

}  // namespace liplab
