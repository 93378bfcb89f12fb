#include <atomic>
#include <thread>

#include "liplab/errors.hpp"
#include "liplab/harness.hpp"
#include "liplab/space_json.hpp"

namespace liplab {

Experiment Experiment::build(const ExperimentConfig& cfg) {
  Experiment ex;
  ex.space = make_space(cfg.space);
  ex.instance = make_instance(ex.space, cfg.instance);
  ex.algorithm = cfg.algorithm;
  ex.mode = cfg.mode;
  // fail before any round runs
  auto probe = make_session(ex.space, ex.algorithm, 0);
  if (ex.mode && *ex.mode != probe->mode())
    throw ValidationError("config mode '" + to_string(*ex.mode) + "' does not match " + probe->name() + " (" +
                          to_string(probe->mode()) + ")");
  return ex;
}

std::uint64_t round_key(std::uint64_t seed, std::uint64_t t) { return Rng(seed).split("instance-noise").split(t).key(); }

std::uint64_t algorithm_seed(std::uint64_t seed) { return Rng(seed).split("algorithm").key(); }

RegretTrace run_match(const Experiment& ex, std::uint64_t horizon, std::uint64_t seed, bool record_bets) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  auto session = make_session(ex.space, ex.algorithm, algorithm_seed(seed));
  const auto& inst = *ex.instance;
  RegretTrace tr;
  tr.algorithm = session->name();
  tr.instance = inst.kind();
  tr.seed = seed;
  tr.mu_star = inst.sup_mean();
  tr.expected_reward.reserve(horizon);
  tr.reward.reserve(horizon);
  tr.cum_regret.reserve(horizon);
  const Rng noise = Rng(seed).split("instance-noise");
  std::vector<double> values;
  double regret = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const Action& a = session->choose();
    if (t == 1) ex.space->require(a.bet);
    PayoffSample pi = inst.sample(noise.split(t).key());
    values.clear();
    for (const auto& p : observed_points(session->mode(), a)) values.push_back(pi(p));
    double mu = inst.mean(a.bet);
    tr.expected_reward.push_back(mu);
    tr.reward.push_back(session->mode() == FeedbackMode::bandit ? values[0] : pi(a.bet));
    // summed per round so that optimal play accrues exactly zero
    regret += tr.mu_star - mu;
    tr.cum_regret.push_back(regret);
    if (record_bets) tr.bets.push_back(a.bet);
    session->observe(values);
  }
  tr.metadata = {{"params", session->params()}, {"report", session->report()}, {"instance", inst.describe()},
                 {"space", ex.space->describe()}, {"mode", to_string(session->mode())}, {"seed", seed}};
  return tr;
}

RegretTrace run_match(const ExperimentConfig& cfg) {
  auto ex = Experiment::build(cfg);
  return run_match(ex, cfg.horizon, cfg.seed_list().front(), cfg.record_bets);
}

ReplicateResult run_replicates(const ExperimentConfig& cfg, std::size_t parallelism) {
  if (parallelism < 1) throw ValidationError("parallelism must be >= 1");
  const auto ex = Experiment::build(cfg);
  const auto seeds = cfg.seed_list();
  std::vector<std::optional<RegretTrace>> slots(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        slots[i] = run_match(ex, cfg.horizon, seeds[i], cfg.record_bets);
        slots[i]->replicate = i;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::size_t n = std::min(parallelism, seeds.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ReplicateResult res;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (slots[i]) res.traces.push_back(std::move(*slots[i]));
    else res.failures.push_back("replicate " + std::to_string(i) + ": " + errors[i]);
  }
  res.summary = aggregate(res.traces);
  return res;
}

}  // namespace liplab
