#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liplab/exploration.hpp"
#include "liplab/session.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

// k-armed UCB1 with index mean + sqrt(2 ln t / n_j); unplayed arms first,
// ties to the lowest arm id.
class Ucb1 {
 public:
  explicit Ucb1(std::size_t arms);
  std::size_t select() const;
  void update(std::size_t arm, double reward);
  std::size_t arms() const { return counts_.size(); }
  std::uint64_t plays() const { return t_; }
  std::uint64_t count(std::size_t arm) const { return counts_.at(arm); }
  double mean(std::size_t arm) const;
  double index(std::size_t arm) const;

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
  std::uint64_t t_ = 0;
};

// UCB1 over every point of a finite space (arm j = j-th enumerated point).
class Ucb1Session final : public AlgorithmSession {
 public:
  explicit Ucb1Session(SpacePtr space);
  std::string name() const override { return "ucb1"; }
  nlohmann::json params() const override { return {{"name", "ucb1"}, {"arms", arms_.size()}}; }
  nlohmann::json report() const override;
  const Ucb1& core() const { return ucb_; }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  std::vector<Point> arms_;
  Ucb1 ucb_;
  std::size_t last_ = 0;
};

// Restarted UCB1 over 2^-i nets: phase i lasts
//   t_i = max(t*_i, t*_{i+1}, 2 s_{i-1}),  t*_k = 2 N_k / eps_k^2 ln(N_k / eps_k^2),  eps_k = 2^-k.
class PhasedUcb1 final : public AlgorithmSession {
 public:
  struct PhaseInfo {
    int index;
    std::size_t net_size;
    double eps;
    double t_star;
    std::uint64_t length;
    std::uint64_t start;  // rounds played before the phase
    bool coarsened;
  };

  explicit PhasedUcb1(SpacePtr space, std::size_t k_cap = std::size_t{1} << 16);
  std::string name() const override { return "phased_ucb1"; }
  nlohmann::json params() const override { return {{"name", "phased_ucb1"}, {"k_cap", k_cap_}}; }
  nlohmann::json report() const override;

  // Net size N_k at radius 2^-k (cached; coarsest feasible net once the cap binds).
  std::size_t net_size(int k) const;
  double t_star(int k) const;
  // Schedule computed without running: lengths of phases 1..count.
  std::vector<std::uint64_t> schedule(int count) const;
  const std::vector<PhaseInfo>& phases() const { return phases_; }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  const std::vector<Point>& net(int k) const;
  void start_phase();

  std::size_t k_cap_;
  mutable std::vector<std::vector<Point>> nets_;  // nets_[k-1]
  mutable std::vector<bool> coarse_;
  std::vector<PhaseInfo> phases_;
  std::optional<Ucb1> ucb_;
  std::uint64_t played_in_phase_ = 0;
  std::uint64_t elapsed_ = 0;
  std::size_t last_ = 0;
};

// Monotone growth g(T) = beta(T) ln T with f in omega(log t).
struct Growth {
  std::string preset = "log2";  // log2: ln^2 T, loglog: ln T ln ln T, logpow:c: ln^{1+c} T
  double c = 1.0;
  static Growth parse(const std::string& s);
  double g(double T) const;
  std::string to_string() const;
};

// Phases of length T = 2^{2^i}: EXPL (or EXPL') with
//   k = floor(sqrt(g(T) / ln T)),  n = floor(k ln T),  r = 4 sqrt(ln T / n),
// then commit to its output for the rest of the phase.
class WellOrderedBandit final : public AlgorithmSession {
 public:
  struct PhaseInfo {
    int index;
    std::uint64_t length;
    std::uint64_t start;
    std::size_t k, n;
    double r;
    std::size_t cost;
    bool degenerate;
    std::optional<Point> output;
  };

  WellOrderedBandit(SpacePtr space, Growth growth, ExplorationRule rule = ExplorationRule::losers);
  std::string name() const override { return rule_ == ExplorationRule::losers ? "well_ordered" : "cb_bandit"; }
  nlohmann::json params() const override;
  nlohmann::json report() const override;
  const std::vector<PhaseInfo>& phases() const { return phases_; }

  static std::uint64_t phase_length(int i);  // 2^{2^i}, saturating

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  void start_phase();

  Growth growth_;
  ExplorationRule rule_;
  std::vector<PhaseInfo> phases_;
  std::optional<ExplorationRun> run_;
  std::optional<Point> commit_;
  std::uint64_t played_in_phase_ = 0;
  std::uint64_t elapsed_ = 0;
};

// Point x(y, t) with d(x, y) < 2^-t, or the closest representable point.
using Rounding = std::function<Point(const Point& y, std::uint64_t t, bool* stalled)>;

Rounding identity_rounding();
// Rounds to the level-min(t+1, L) grid of a dyadic space.
Rounding dyadic_rounding(std::shared_ptr<const DyadicSpace> outer);

// Runs an inner bandit session on a complete space and plays rounded points
// of the outer space, feeding back Bernoulli(pi(x)) re-randomized rewards.
class CompletionAdapter final : public AlgorithmSession {
 public:
  CompletionAdapter(SpacePtr outer, SessionPtr inner, Rounding rounding, std::uint64_t seed, bool rerandomize = true);
  std::string name() const override { return "completion"; }
  nlohmann::json params() const override;
  nlohmann::json report() const override;
  const AlgorithmSession& inner() const { return *inner_; }
  std::uint64_t stalls() const { return stalls_; }
  double last_perturbation() const { return last_gap_; }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  SessionPtr inner_;
  Rounding rounding_;
  Rng rng_;
  bool rerandomize_;
  std::uint64_t stalls_ = 0;
  double last_gap_ = 0.0;
  double max_excess_ = 0.0;  // max over rounds of d(x, y) * 2^t
};

}  // namespace liplab
