#include <cmath>

#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"

namespace liplab {

Rounding identity_rounding() {
  return [](const Point& y, std::uint64_t, bool* stalled) {
    *stalled = false;
    return y;
  };
}

Rounding dyadic_rounding(std::shared_ptr<const DyadicSpace> outer) {
  return [outer](const Point& y, std::uint64_t t, bool* stalled) {
    const int L = outer->level();
    int bits = t + 1 > static_cast<std::uint64_t>(L) ? L : static_cast<int>(t + 1);
    // the level-L grid is within 2^-L-1 of y, which beats 2^-t only while t <= L
    *stalled = t > static_cast<std::uint64_t>(L);
    return outer->round(y.coord, bits);
  };
}

CompletionAdapter::CompletionAdapter(SpacePtr outer, SessionPtr inner, Rounding rounding, std::uint64_t seed, bool rerandomize)
    : AlgorithmSession(std::move(outer), FeedbackMode::bandit), inner_(std::move(inner)), rounding_(std::move(rounding)),
      rng_(Rng(seed).split("completion")), rerandomize_(rerandomize) {
  if (!inner_) throw ValidationError("completion adapter needs an inner session");
  if (inner_->mode() != FeedbackMode::bandit) throw ValidationError("completion adapter wraps bandit sessions only");
}

Action CompletionAdapter::next_action() {
  const Point y = inner_->choose().bet;
  bool stalled = false;
  Point x = rounding_(y, t() + 1, &stalled);
  space_->require(x);
  if (stalled) ++stalls_;
  last_gap_ = std::abs(x.coord - y.coord);
  if (!stalled) max_excess_ = std::max(max_excess_, std::ldexp(last_gap_, static_cast<int>(std::min<std::uint64_t>(t() + 1, 1000))));
  return Action{x, {}};
}

void CompletionAdapter::absorb(const Action&, std::span<const double> values) {
  double v = values[0];
  if (rerandomize_) v = rng_.bernoulli(v) ? 1.0 : 0.0;
  inner_->observe(std::span<const double>(&v, 1));
}

nlohmann::json CompletionAdapter::params() const {
  return {{"name", "completion"}, {"inner", inner_->params()}, {"rerandomize", rerandomize_}};
}

nlohmann::json CompletionAdapter::report() const {
  return {{"stalls", stalls_}, {"max_scaled_perturbation", max_excess_}, {"inner", inner_->report()}};
}

}  // namespace liplab
