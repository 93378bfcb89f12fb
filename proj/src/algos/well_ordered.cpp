#include <cmath>
#include <limits>

#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"

namespace liplab {

Growth Growth::parse(const std::string& s) {
  Growth g;
  if (s == "log2" || s == "loglog") {
    g.preset = s;
    return g;
  }
  if (s.rfind("logpow:", 0) == 0) {
    g.preset = "logpow";
    try {
      g.c = std::stod(s.substr(7));
    } catch (const std::exception&) {
      throw ValidationError("bad growth exponent in '" + s + "'");
    }
    if (!(g.c > 0.0)) throw ValidationError("logpow exponent must be positive");
    return g;
  }
  throw ValidationError("growth must be log2, loglog or logpow:<c>, got '" + s + "'");
}

double Growth::g(double T) const {
  double l = std::log(T);
  if (preset == "log2") return l * l;
  if (preset == "loglog") return l > 1.0 ? l * std::log(l) : 0.0;
  return std::pow(l, 1.0 + c);
}

std::string Growth::to_string() const { return preset == "logpow" ? "logpow:" + std::to_string(c) : preset; }

WellOrderedBandit::WellOrderedBandit(SpacePtr space, Growth growth, ExplorationRule rule)
    : AlgorithmSession(std::move(space), FeedbackMode::bandit), growth_(std::move(growth)), rule_(rule) {
  auto caps = space_->capabilities();
  if (rule_ == ExplorationRule::losers && !caps.well_ordered)
    throw CapabilityError("well_ordered bandit needs a well-ordered space, got " + space_->name());
  if (rule_ == ExplorationRule::dominance && !caps.cb_ranked)
    throw CapabilityError("cb_bandit needs rank oracles, got " + space_->name());
}

std::uint64_t WellOrderedBandit::phase_length(int i) {
  if (i >= 6) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << (1u << i);
}

void WellOrderedBandit::start_phase() {
  int i = static_cast<int>(phases_.size());
  double lnT = std::ldexp(std::log(2.0), i);
  double T = std::exp(lnT);
  auto k = static_cast<std::size_t>(std::max(1.0, std::floor(std::sqrt(growth_.g(T) / lnT))));
  auto n = static_cast<std::size_t>(std::max(1.0, std::floor(static_cast<double>(k) * lnT)));
  double r = 4.0 * std::sqrt(lnT / static_cast<double>(n));
  run_.emplace(rule_ == ExplorationRule::losers ? ExplorationRun::expl(*space_, k, n, r)
                                                : ExplorationRun::expl_prime(*space_, k, n, r));
  std::uint64_t len = phase_length(i);
  phases_.push_back(PhaseInfo{i, len, elapsed_, k, n, r, run_->budget(), run_->budget() > len, std::nullopt});
  played_in_phase_ = 0;
}

Action WellOrderedBandit::next_action() {
  if (phases_.empty() || played_in_phase_ >= phases_.back().length) start_phase();
  if (!run_->done()) return Action{run_->next(), {}};
  auto& ph = phases_.back();
  if (!ph.output) {
    ph.output = run_->result();
    commit_ = ph.output;
  }
  return Action{*commit_, {}};
}

void WellOrderedBandit::absorb(const Action&, std::span<const double> values) {
  if (!run_->done()) run_->record(values[0]);
  ++played_in_phase_;
  ++elapsed_;
}

nlohmann::json WellOrderedBandit::params() const {
  return {{"name", name()}, {"growth", growth_.to_string()}};
}

nlohmann::json WellOrderedBandit::report() const {
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& p : phases_) {
    nlohmann::json j{{"index", p.index}, {"length", p.length}, {"start", p.start}, {"k", p.k}, {"n", p.n},
                     {"r", p.r}, {"cost", p.cost}, {"degenerate", p.degenerate}};
    j["output"] = p.output ? space_->point_to_json(*p.output) : nlohmann::json(nullptr);
    ph.push_back(j);
  }
  return {{"phases", ph}};
}

}  // namespace liplab
