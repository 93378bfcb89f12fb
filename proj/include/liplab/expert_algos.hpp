#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "liplab/decomposition.hpp"
#include "liplab/exploration.hpp"
#include "liplab/session.hpp"

namespace liplab {

// Double feedback on a well-ordered space: phases T = 2^i run EXPL on the
// peeks with k = n = floor(sqrt T), r = 4 sqrt(T^{1/4} / n), while betting on
// the previous phase's output (the canonical least point in phase 0).
class DoubleFeedbackExpert final : public AlgorithmSession {
 public:
  struct PhaseInfo {
    int index;
    std::uint64_t length;
    std::size_t k, n;
    double r;
    std::size_t cost;
    std::optional<Point> output;
  };

  explicit DoubleFeedbackExpert(SpacePtr space);
  std::string name() const override { return "double_feedback"; }
  nlohmann::json params() const override { return {{"name", "double_feedback"}}; }
  nlohmann::json report() const override;
  const std::vector<PhaseInfo>& phases() const { return phases_; }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  void start_phase();
  void finish_phase();

  std::vector<PhaseInfo> phases_;
  std::optional<ExplorationRun> run_;
  Point bet_;
  std::uint64_t played_in_phase_ = 0;
};

// Full feedback, phases T = 2^i: query a delta-net S with
// delta = T^{-1/(b+2)} (uniform variant: T^{-1/b}) every round and bet the
// previous phase's best sample average.
class NaiveExperts final : public AlgorithmSession {
 public:
  struct PhaseInfo {
    int index;
    std::uint64_t length;
    double delta;      // requested
    double achieved;   // covering radius of the net
    std::size_t size;
    bool coarsened;
    std::optional<Point> best;
  };

  NaiveExperts(SpacePtr space, double b, bool uniform = false, std::size_t k_cap = 4096);
  std::string name() const override { return uniform_ ? "naive_experts_uniform" : "naive_experts"; }
  nlohmann::json params() const override;
  nlohmann::json report() const override;
  const std::vector<PhaseInfo>& phases() const { return phases_; }
  double phase_delta(std::uint64_t T) const;
  // Best sample average over the current phase's net so far.
  Point current_best() const;
  const std::vector<Point>& net() const { return net_; }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  void start_phase();

  double b_;
  bool uniform_;
  std::size_t k_cap_;
  std::vector<PhaseInfo> phases_;
  std::vector<Point> net_;
  std::vector<double> sums_;
  Point bet_;
  std::uint64_t played_in_phase_ = 0;
};

// Phased full-feedback algorithm on a depth decomposition. Phase i (T = 2^i):
//  - N: the finest 2^-j net with at most min(2^{sqrt T}, net_cap) points,
//  - r_T = sqrt(8 ln(T |N|) / T), delta = T^{-1/(b+2)} (uniform: T^{-1/b}),
//  - quota Q_T = 2^{delta^-b}, capped at quota_cap,
//  - active set A: delta-net of S_lambda minus B, where lambda and B come from
//    the previous phase's statistics on its net (one-phase lag),
//  - queries N and A each round, bets the previous best guess.
class MaxMinLcdExperts final : public AlgorithmSession {
 public:
  struct Options {
    double b = 1.0;
    bool uniform = false;
    std::size_t net_cap = 4096;
    std::size_t quota_cap = 4096;
  };
  struct PhaseInfo {
    int index;
    std::uint64_t length;
    int j;
    std::size_t net_size;
    double r_T;
    double delta;
    double log2_quota;
    std::size_t active_size;
    int lambda;
    std::optional<Point> depth_point;
    std::size_t excluded;
    bool net_flag;
    bool quota_flag;
    std::optional<Point> best;
  };

  MaxMinLcdExperts(std::shared_ptr<const DepthStructure> decomposition, Options opt);
  std::string name() const override { return "maxminlcd"; }
  nlohmann::json params() const override;
  nlohmann::json report() const override;
  const std::vector<PhaseInfo>& phases() const { return phases_; }

  static double r_T(double T, std::size_t net_size);
  double phase_delta(double T) const;
  double log2_quota(double delta) const { return std::pow(delta, -opt_.b); }

 protected:
  Action next_action() override;
  void absorb(const Action& a, std::span<const double> values) override;

 private:
  void start_phase();
  void close_phase();

  std::shared_ptr<const DepthStructure> dec_;
  Options opt_;
  std::vector<PhaseInfo> phases_;
  std::vector<Point> net_, active_;
  std::vector<double> net_sums_, active_sums_;
  double net_radius_ = 1.0;
  // previous phase statistics
  std::vector<Point> prev_net_;
  std::vector<double> prev_gap_;
  double prev_r_T_ = 0.0, prev_radius_ = 1.0;
  Point bet_;
  std::uint64_t played_in_phase_ = 0;
};

}  // namespace liplab
