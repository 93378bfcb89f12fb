#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/expert_algos.hpp"

namespace liplab {

namespace {

// Highest average, ties to the canonically least point.
Point best_of(const MetricSpace& s, const std::vector<Point>& pts, const std::vector<double>& sums) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (sums[i] > sums[best] || (sums[i] == sums[best] && s.canonical_less(pts[i], pts[best]))) best = i;
  return pts[best];
}

}  // namespace

NaiveExperts::NaiveExperts(SpacePtr space, double b, bool uniform, std::size_t k_cap)
    : AlgorithmSession(std::move(space), FeedbackMode::full), b_(b), uniform_(uniform), k_cap_(k_cap) {
  if (!(b_ >= 0.0)) throw ValidationError("naive_experts needs b >= 0");
  if (uniform_ && b_ < 2.0) throw ValidationError("the uniform variant needs b >= 2");
  if (k_cap_ < 1) throw ValidationError("k_cap must be >= 1");
  bet_ = space_->canonical_least();
}

double NaiveExperts::phase_delta(std::uint64_t T) const {
  return std::pow(static_cast<double>(T), uniform_ ? -1.0 / b_ : -1.0 / (b_ + 2.0));
}

void NaiveExperts::start_phase() {
  if (!phases_.empty()) {
    bet_ = best_of(*space_, net_, sums_);
    phases_.back().best = bet_;
  }
  int i = static_cast<int>(phases_.size());
  if (i >= 63) throw ValidationError("naive_experts phase index overflow");
  std::uint64_t T = std::uint64_t{1} << i;
  double delta = phase_delta(T);
  Covering c;
  bool coarse = false;
  try {
    c = cover_to_delta(*space_, delta, k_cap_);
  } catch (const ResolutionError&) {
    c = space_->cover(k_cap_);
    coarse = true;
  }
  net_ = std::move(c.points);
  sums_.assign(net_.size(), 0.0);
  phases_.push_back(PhaseInfo{i, T, delta, c.delta, net_.size(), coarse, std::nullopt});
  played_in_phase_ = 0;
}

Point NaiveExperts::current_best() const { return best_of(*space_, net_, sums_); }

Action NaiveExperts::next_action() {
  if (phases_.empty() || played_in_phase_ >= phases_.back().length) start_phase();
  return Action{bet_, net_};
}

void NaiveExperts::absorb(const Action&, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) sums_[i] += values[i];
  ++played_in_phase_;
}

nlohmann::json NaiveExperts::params() const {
  return {{"name", name()}, {"b", b_}, {"uniform", uniform_}, {"k_cap", k_cap_}};
}

nlohmann::json NaiveExperts::report() const {
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& p : phases_) {
    nlohmann::json j{{"index", p.index}, {"length", p.length}, {"delta", p.delta}, {"achieved", p.achieved},
                     {"size", p.size}, {"coarsened", p.coarsened}};
    j["best"] = p.best ? space_->point_to_json(*p.best) : nlohmann::json(nullptr);
    ph.push_back(j);
  }
  return {{"phases", ph}};
}

}  // namespace liplab
