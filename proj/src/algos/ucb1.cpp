#include <cmath>

#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"

namespace liplab {

Ucb1::Ucb1(std::size_t arms) : counts_(arms, 0), sums_(arms, 0.0) {
  if (arms == 0) throw ValidationError("UCB1 needs at least one arm");
}

double Ucb1::mean(std::size_t arm) const {
  return counts_.at(arm) ? sums_[arm] / static_cast<double>(counts_[arm]) : 0.0;
}

double Ucb1::index(std::size_t arm) const {
  if (counts_.at(arm) == 0) return INFINITY;
  return mean(arm) + std::sqrt(2.0 * std::log(static_cast<double>(t_)) / static_cast<double>(counts_[arm]));
}

std::size_t Ucb1::select() const {
  for (std::size_t j = 0; j < counts_.size(); ++j)
    if (counts_[j] == 0) return j;
  std::size_t best = 0;
  double bi = index(0);
  for (std::size_t j = 1; j < counts_.size(); ++j) {
    double v = index(j);
    if (v > bi) {
      bi = v;
      best = j;
    }
  }
  return best;
}

void Ucb1::update(std::size_t arm, double reward) {
  ++counts_.at(arm);
  sums_[arm] += reward;
  ++t_;
}

Ucb1Session::Ucb1Session(SpacePtr space) : AlgorithmSession(std::move(space), FeedbackMode::bandit), ucb_(1) {
  auto pts = space_->enumerate();
  if (!pts || pts->empty()) throw CapabilityError("ucb1 needs a finite space, got " + space_->name());
  arms_ = std::move(*pts);
  ucb_ = Ucb1(arms_.size());
}

Action Ucb1Session::next_action() {
  last_ = ucb_.select();
  return Action{arms_[last_], {}};
}

void Ucb1Session::absorb(const Action&, std::span<const double> values) { ucb_.update(last_, values[0]); }

nlohmann::json Ucb1Session::report() const {
  std::vector<std::uint64_t> counts;
  for (std::size_t j = 0; j < arms_.size(); ++j) counts.push_back(ucb_.count(j));
  return {{"counts", counts}};
}

}  // namespace liplab
