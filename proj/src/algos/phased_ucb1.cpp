#include <algorithm>
#include <cmath>

#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"

namespace liplab {

PhasedUcb1::PhasedUcb1(SpacePtr space, std::size_t k_cap) : AlgorithmSession(std::move(space), FeedbackMode::bandit), k_cap_(k_cap) {
  if (k_cap_ < 1) throw ValidationError("k_cap must be >= 1");
}

const std::vector<Point>& PhasedUcb1::net(int k) const {
  while (static_cast<int>(nets_.size()) < k) {
    int i = static_cast<int>(nets_.size()) + 1;
    try {
      nets_.push_back(cover_to_delta(*space_, std::ldexp(1.0, -i), k_cap_).points);
      coarse_.push_back(false);
    } catch (const ResolutionError&) {
      // the cap binds: stay at the last feasible net
      nets_.push_back(nets_.empty() ? space_->cover(k_cap_).points : nets_.back());
      coarse_.push_back(true);
    }
  }
  return nets_[static_cast<std::size_t>(k - 1)];
}

std::size_t PhasedUcb1::net_size(int k) const { return net(k).size(); }

double PhasedUcb1::t_star(int k) const {
  double n = static_cast<double>(net_size(k));
  double e2 = std::ldexp(1.0, -2 * k);
  return 2.0 * n / e2 * std::log(n / e2);
}

std::vector<std::uint64_t> PhasedUcb1::schedule(int count) const {
  std::vector<std::uint64_t> out;
  std::uint64_t s = 0;
  for (int i = 1; i <= count; ++i) {
    double t = std::max({t_star(i), t_star(i + 1), 2.0 * static_cast<double>(s)});
    auto len = static_cast<std::uint64_t>(std::ceil(t));
    out.push_back(std::max<std::uint64_t>(len, 1));
    s += out.back();
  }
  return out;
}

void PhasedUcb1::start_phase() {
  int i = static_cast<int>(phases_.size()) + 1;
  std::uint64_t len = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(std::max({t_star(i), t_star(i + 1), 2.0 * static_cast<double>(elapsed_)}))));
  phases_.push_back(PhaseInfo{i, net_size(i), std::ldexp(1.0, -i), t_star(i), len, elapsed_, coarse_[static_cast<std::size_t>(i - 1)]});
  ucb_.emplace(net(i).size());
  played_in_phase_ = 0;
}

Action PhasedUcb1::next_action() {
  if (phases_.empty() || played_in_phase_ >= phases_.back().length) start_phase();
  last_ = ucb_->select();
  return Action{net(phases_.back().index)[last_], {}};
}

void PhasedUcb1::absorb(const Action&, std::span<const double> values) {
  ucb_->update(last_, values[0]);
  ++played_in_phase_;
  ++elapsed_;
}

nlohmann::json PhasedUcb1::report() const {
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& p : phases_)
    ph.push_back({{"index", p.index}, {"net_size", p.net_size}, {"eps", p.eps}, {"t_star", p.t_star},
                  {"length", p.length}, {"start", p.start}, {"coarsened", p.coarsened}});
  return {{"phases", ph}};
}

}  // namespace liplab
