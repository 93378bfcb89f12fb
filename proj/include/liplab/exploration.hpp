#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "liplab/metric_space.hpp"

namespace liplab {

enum class ExplorationRule {
  losers,     // EXPL: drop x when mu(y) - mu(x) > 2r + delta, then the ordering oracle
  dominance,  // EXPL': drop x when dominated by more than 2r, then the max-rank survivor
};

// Incremental EXPL / EXPL': plays every strategy of S exactly n times in
// round-robin order, then selects a point.
class ExplorationRun {
 public:
  // EXPL over the covering oracle's k points (delta from the oracle).
  static ExplorationRun expl(const MetricSpace& space, std::size_t k, std::size_t n, double r);
  // EXPL' over the union of the rank-wise coverings of size k.
  static ExplorationRun expl_prime(const MetricSpace& space, std::size_t k, std::size_t n, double r);

  bool done() const { return pulls_ >= budget(); }
  std::size_t budget() const { return strategies_.size() * n_; }
  std::size_t pulls() const { return pulls_; }
  const Point& next() const { return strategies_[pulls_ % strategies_.size()]; }
  void record(double reward);

  // The selected point, computed from every completed pull; nullopt before
  // every strategy has been played at least once.
  std::optional<Point> result() const;

  const std::vector<Point>& strategies() const { return strategies_; }
  std::vector<double> averages() const;
  std::vector<bool> eliminated() const;
  double delta() const { return delta_; }
  double radius() const { return r_; }
  std::size_t repeats() const { return n_; }

 private:
  ExplorationRun(const MetricSpace& space, ExplorationRule rule, std::vector<Point> s, std::size_t n, double r, double delta);

  const MetricSpace* space_;
  ExplorationRule rule_;
  std::vector<Point> strategies_;
  std::size_t n_;
  double r_, delta_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::size_t pulls_ = 0;
};

using PullFn = std::function<double(const Point&)>;

Point expl(const MetricSpace& space, std::size_t k, std::size_t n, double r, const PullFn& pull);
Point expl_prime(const MetricSpace& space, std::size_t k, std::size_t n, double r, const PullFn& pull);

}  // namespace liplab
