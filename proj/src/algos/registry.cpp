#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"
#include "liplab/expert_algos.hpp"
#include "liplab/space_json.hpp"

namespace liplab {

std::vector<std::string> algorithm_names() {
  return {"ucb1", "phased_ucb1", "well_ordered", "cb_bandit", "completion", "double_feedback", "naive_experts", "maxminlcd"};
}

SessionPtr make_session(SpacePtr space, const nlohmann::json& d, std::uint64_t seed) {
  if (!space) throw ValidationError("algorithm needs a space");
  if (!d.is_object() || !d.contains("name")) throw ValidationError("algorithm descriptor needs a \"name\"");
  const auto name = d.at("name").get<std::string>();
  try {
    if (name == "ucb1") {
      check_keys(d, {"name"}, "ucb1");
      return std::make_unique<Ucb1Session>(space);
    }
    if (name == "phased_ucb1") {
      check_keys(d, {"name", "k_cap"}, "phased_ucb1");
      return std::make_unique<PhasedUcb1>(space, get_or<std::size_t>(d, "k_cap", std::size_t{1} << 16));
    }
    if (name == "well_ordered" || name == "cb_bandit") {
      check_keys(d, {"name", "growth"}, name);
      return std::make_unique<WellOrderedBandit>(space, Growth::parse(get_or<std::string>(d, "growth", "log2")),
                                                 name == "well_ordered" ? ExplorationRule::losers : ExplorationRule::dominance);
    }
    if (name == "completion") {
      check_keys(d, {"name", "inner", "inner_space", "rerandomize"}, "completion");
      auto inner_space = make_space(get_or<nlohmann::json>(d, "inner_space", {{"kind", "interval"}}));
      auto inner = make_session(inner_space, d.at("inner"), seed);
      bool rr = get_or(d, "rerandomize", true);
      if (space->kind() == SpaceKind::dyadic) {
        auto outer = std::static_pointer_cast<const DyadicSpace>(space);
        if (inner_space->kind() != SpaceKind::interval) throw ValidationError("dyadic completion needs an interval inner space");
        return std::make_unique<CompletionAdapter>(space, std::move(inner), dyadic_rounding(outer), seed, rr);
      }
      if (space->describe() != inner_space->describe())
        throw ValidationError("completion without rounding needs identical inner and outer spaces");
      return std::make_unique<CompletionAdapter>(space, std::move(inner), identity_rounding(), seed, rr);
    }
    if (name == "double_feedback") {
      check_keys(d, {"name"}, "double_feedback");
      return std::make_unique<DoubleFeedbackExpert>(space);
    }
    if (name == "naive_experts") {
      check_keys(d, {"name", "b", "uniform", "k_cap"}, "naive_experts");
      return std::make_unique<NaiveExperts>(space, get_or(d, "b", 1.0), get_or(d, "uniform", false),
                                            get_or<std::size_t>(d, "k_cap", 4096));
    }
    if (name == "maxminlcd") {
      check_keys(d, {"name", "b", "uniform", "net_cap", "quota_cap", "decomposition"}, "maxminlcd");
      MaxMinLcdExperts::Options o;
      o.b = get_or(d, "b", o.b);
      o.uniform = get_or(d, "uniform", o.uniform);
      o.net_cap = get_or(d, "net_cap", o.net_cap);
      o.quota_cap = get_or(d, "quota_cap", o.quota_cap);
      auto dec = std::make_shared<const DepthStructure>(
          make_decomposition(space, d.contains("decomposition") ? d.at("decomposition") : nlohmann::json(nullptr)));
      return std::make_unique<MaxMinLcdExperts>(dec, o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(name + ": " + e.what());
  }
  throw ValidationError("unknown algorithm '" + name + "'");
}

}  // namespace liplab
