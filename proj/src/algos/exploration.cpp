#include <algorithm>

#include "liplab/errors.hpp"
#include "liplab/exploration.hpp"

namespace liplab {

namespace {

void check_params(std::size_t k, std::size_t n, double r) {
  if (k < 1 || n < 1) throw ValidationError("exploration needs k, n >= 1");
  if (!(r > 0.0)) throw ValidationError("exploration radius r must be positive");
}

}  // namespace

ExplorationRun::ExplorationRun(const MetricSpace& space, ExplorationRule rule, std::vector<Point> s, std::size_t n, double r,
                               double delta)
    : space_(&space), rule_(rule), strategies_(std::move(s)), n_(n), r_(r), delta_(delta),
      sums_(strategies_.size(), 0.0), counts_(strategies_.size(), 0) {
  if (strategies_.empty()) throw ValidationError("exploration needs at least one strategy");
}

ExplorationRun ExplorationRun::expl(const MetricSpace& space, std::size_t k, std::size_t n, double r) {
  check_params(k, n, r);
  if (!space.capabilities().well_ordered) throw CapabilityError("EXPL needs a well-ordered space, got " + space.name());
  Covering c = space.cover(k);
  return ExplorationRun(space, ExplorationRule::losers, std::move(c.points), n, r, c.delta);
}

ExplorationRun ExplorationRun::expl_prime(const MetricSpace& space, std::size_t k, std::size_t n, double r) {
  check_params(k, n, r);
  if (!space.capabilities().cb_ranked) throw CapabilityError("EXPL' needs rank oracles, got " + space.name());
  std::vector<Point> s;
  for (int l = 0; l <= space.cb_rank(); ++l) {
    for (auto& p : space.rank_cover(l, k).points)
      if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(std::move(p));
  }
  return ExplorationRun(space, ExplorationRule::dominance, std::move(s), n, r, 0.0);
}

void ExplorationRun::record(double reward) {
  if (done()) throw ProtocolError("exploration budget exhausted");
  auto i = pulls_ % strategies_.size();
  sums_[i] += reward;
  ++counts_[i];
  ++pulls_;
}

std::vector<double> ExplorationRun::averages() const {
  std::vector<double> a(strategies_.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (counts_[i] > 0) a[i] = sums_[i] / static_cast<double>(counts_[i]);
  return a;
}

std::vector<bool> ExplorationRun::eliminated() const {
  auto avg = averages();
  double best = *std::max_element(avg.begin(), avg.end());
  double margin = rule_ == ExplorationRule::losers ? 2.0 * r_ + delta_ : 2.0 * r_;
  std::vector<bool> out(avg.size());
  for (std::size_t i = 0; i < avg.size(); ++i) out[i] = best - avg[i] > margin;
  return out;
}

std::optional<Point> ExplorationRun::result() const {
  if (pulls_ < strategies_.size()) return std::nullopt;
  auto out = eliminated();
  if (rule_ == ExplorationRule::losers) {
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < strategies_.size(); ++i)
      if (!out[i]) balls.push_back(Ball::closed_ball(strategies_[i], delta_));
    return ordering_oracle(*space_, balls).point;
  }
  std::optional<Point> best;
  int best_rank = -1;
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    if (out[i]) continue;
    int rk = space_->point_rank(strategies_[i]);
    if (rk > best_rank || (rk == best_rank && space_->canonical_less(strategies_[i], *best))) {
      best_rank = rk;
      best = strategies_[i];
    }
  }
  if (!best) {
    best = strategies_.front();
    for (const auto& p : strategies_)
      if (space_->canonical_less(p, *best)) best = p;
  }
  return best;
}

namespace {

Point drive(ExplorationRun run, const PullFn& pull) {
  while (!run.done()) run.record(pull(run.next()));
  return *run.result();
}

}  // namespace

Point expl(const MetricSpace& space, std::size_t k, std::size_t n, double r, const PullFn& pull) {
  return drive(ExplorationRun::expl(space, k, n, r), pull);
}

Point expl_prime(const MetricSpace& space, std::size_t k, std::size_t n, double r, const PullFn& pull) {
  return drive(ExplorationRun::expl_prime(space, k, n, r), pull);
}

}  // namespace liplab
