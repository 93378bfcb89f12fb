#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/expert_algos.hpp"

namespace liplab {

DoubleFeedbackExpert::DoubleFeedbackExpert(SpacePtr space) : AlgorithmSession(std::move(space), FeedbackMode::double_feedback) {
  if (!space_->capabilities().well_ordered)
    throw CapabilityError("double_feedback needs a well-ordered space, got " + space_->name());
  bet_ = space_->canonical_least();
}

void DoubleFeedbackExpert::start_phase() {
  int i = static_cast<int>(phases_.size());
  if (i >= 63) throw ValidationError("double_feedback phase index overflow");
  std::uint64_t T = std::uint64_t{1} << i;
  auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(T))));
  std::size_t n = k;
  double r = 4.0 * std::sqrt(std::pow(static_cast<double>(T), 0.25) / static_cast<double>(n));
  run_.emplace(ExplorationRun::expl(*space_, k, n, r));
  phases_.push_back(PhaseInfo{i, T, k, n, r, run_->budget(), std::nullopt});
  played_in_phase_ = 0;
}

void DoubleFeedbackExpert::finish_phase() {
  auto& ph = phases_.back();
  ph.output = run_->result();
  if (ph.output) bet_ = *ph.output;
}

Action DoubleFeedbackExpert::next_action() {
  if (phases_.empty() || played_in_phase_ >= phases_.back().length) {
    if (!phases_.empty()) finish_phase();
    start_phase();
  }
  const Point& peek = run_->done() ? bet_ : run_->next();
  return Action{bet_, {peek}};
}

void DoubleFeedbackExpert::absorb(const Action&, std::span<const double> values) {
  if (!run_->done()) run_->record(values[0]);
  ++played_in_phase_;
}

nlohmann::json DoubleFeedbackExpert::report() const {
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& p : phases_) {
    nlohmann::json j{{"index", p.index}, {"length", p.length}, {"k", p.k}, {"n", p.n}, {"r", p.r}, {"cost", p.cost}};
    j["output"] = p.output ? space_->point_to_json(*p.output) : nlohmann::json(nullptr);
    ph.push_back(j);
  }
  return {{"phases", ph}};
}

}  // namespace liplab
