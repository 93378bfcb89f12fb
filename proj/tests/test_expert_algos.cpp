#include <gtest/gtest.h>

#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/expert_algos.hpp"
#include "liplab/harness.hpp"
#include "liplab/spaces.hpp"

using namespace liplab;
using nlohmann::json;

namespace {

SpacePtr interval() { return std::make_shared<IntervalSpace>(); }

// Feeds a session from an instance for `rounds` rounds; returns the bets.
std::vector<Point> drive(AlgorithmSession& s, const PayoffInstance& inst, std::uint64_t rounds, std::uint64_t seed) {
  std::vector<Point> bets;
  std::vector<double> v;
  for (std::uint64_t t = 1; t <= rounds; ++t) {
    const Action& a = s.choose();
    bets.push_back(a.bet);
    auto pi = inst.sample(round_key(seed, t));
    v.clear();
    for (const auto& q : observed_points(s.mode(), a)) v.push_back(pi(q));
    s.observe(v);
  }
  return bets;
}

}  // namespace

TEST(DoubleFeedback, SingletonZeroRegret) {
  auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "finite"}, {"uniform", 1}}},
                                          {"instance", {{"kind", "table"}, {"means", {0.7}}}},
                                          {"algorithm", {{"name", "double_feedback"}}},
                                          {"horizon", 1000}});
  auto tr = run_match(cfg);
  for (double r : tr.cum_regret) ASSERT_EQ(r, 0.0);
}

TEST(DoubleFeedback, NeedsWellOrder) { EXPECT_THROW(DoubleFeedbackExpert{interval()}, CapabilityError); }

TEST(DoubleFeedback, PhaseBookkeepingAndBetPurity) {
  auto space = std::make_shared<CountableSpace>(CountableSpace::sequence(100));
  PeakInstance inst(space, space->find(0.5), 1.0, 1.0, NoiseModel::bernoulli);
  DoubleFeedbackExpert s(space);
  auto bets = drive(s, inst, (1u << 12) - 1, 4);
  ASSERT_EQ(s.phases().size(), 12u);
  std::uint64_t start = 0;
  for (const auto& p : s.phases()) {
    EXPECT_EQ(p.length, std::uint64_t{1} << p.index);
    auto k = static_cast<std::size_t>(std::floor(std::sqrt(double(p.length))));
    EXPECT_EQ(p.k, k);
    EXPECT_EQ(p.n, k);
    EXPECT_DOUBLE_EQ(p.r, 4.0 * std::sqrt(std::pow(double(p.length), 0.25) / double(k)));
    EXPECT_LE(p.cost, p.k * p.n);
    // the bet is fixed for the whole phase
    for (std::uint64_t t = start; t < start + p.length; ++t) ASSERT_EQ(bets[t], bets[start]);
    start += p.length;
  }
}

// r_T = 4 T^{-1/8} exceeds the diameter up to T = 2^32, so no point is eliminated here
// and EXPL returns the order-maximal point 0.
TEST(DoubleFeedback, SettlesOnPeak) {
  for (double peak : {0.0}) {
    auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "sequence"}, {"terms", 100}}},
                                            {"instance", {{"kind", "peak"}, {"peak", peak}, {"slope", 1.0}, {"top", 1.0}}},
                                            {"algorithm", {{"name", "double_feedback"}}},
                                            {"horizon", 1 << 15},
                                            {"replicates", 30}});
    auto res = run_replicates(cfg, 4);
    int flat = 0;
    const std::uint64_t last = std::uint64_t{1} << 14;  // final phase starts at round 2^14
    for (const auto& t : res.traces) flat += t.regret_at(t.horizon()) == t.regret_at(last);
    EXPECT_GE(flat, 24) << peak;
  }
}

TEST(DoubleFeedback, ReplayIdentical) {
  auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "sequence"}, {"terms", 50}}},
                                          {"instance", {{"kind", "peak"}, {"peak", 0.25}, {"slope", 1.0}, {"top", 1.0}}},
                                          {"algorithm", {{"name", "double_feedback"}}},
                                          {"horizon", 4000}});
  EXPECT_EQ(trace_digest(run_match(cfg)), trace_digest(run_match(cfg)));
}

TEST(NaiveExperts, ConstantInstanceZeroRegret) {
  for (json algo : {json{{"name", "naive_experts"}, {"b", 1.0}}, json{{"name", "naive_experts"}, {"b", 2.0}, {"uniform", true}},
                    json{{"name", "maxminlcd"}, {"b", 1.0}, {"net_cap", 64}}}) {
    auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "finite"}, {"coords", {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}}}},
                                            {"instance", {{"kind", "table"}, {"means", {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}}}},
                                            {"algorithm", algo},
                                            {"horizon", 2000}});
    auto tr = run_match(cfg);
    for (double r : tr.cum_regret) ASSERT_EQ(r, 0.0) << algo.dump();
  }
}

TEST(NaiveExperts, DeltaAndHittingSets) {
  auto space = interval();
  PeakInstance inst(space, Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  NaiveExperts s(space, 0.5);
  drive(s, inst, (1u << 11) - 1, 1);
  ASSERT_EQ(s.phases().size(), 11u);
  for (const auto& p : s.phases()) {
    EXPECT_DOUBLE_EQ(p.delta, std::pow(double(p.length), -1.0 / 2.5));
    EXPECT_FALSE(p.coarsened);
    EXPECT_LE(p.achieved, p.delta);
    EXPECT_EQ(p.size, static_cast<std::size_t>(std::ceil(1.0 / (2.0 * p.delta))));
  }
  EXPECT_EQ(s.name(), "naive_experts");
  EXPECT_EQ(NaiveExperts(space, 2.0, true).name(), "naive_experts_uniform");
  EXPECT_THROW(NaiveExperts(space, 1.0, true), ValidationError);
}

TEST(NaiveExperts, CoarsensWhenNetTooLarge) {
  auto space = interval();
  PeakInstance inst(space, Point::real(0.3), 1.0, 0.9, NoiseModel::none);
  NaiveExperts s(space, 0.0, false, 8);
  drive(s, inst, 1023, 1);
  bool any = false;
  for (const auto& p : s.phases()) {
    EXPECT_LE(p.size, 8u);
    any = any || p.coarsened;
  }
  EXPECT_TRUE(any);
}

TEST(NaiveExperts, BestGuessIsPhaseLocal) {
  auto space = std::make_shared<FiniteSpace>(FiniteSpace::from_coords({0.0, 0.25, 0.5, 0.75, 1.0}));
  TableInstance inst(space, {0.5, 0.6, 0.8, 0.6, 0.5}, NoiseModel::none);
  NaiveExperts s(space, 1.0);
  auto bets = drive(s, inst, 63, 1);
  EXPECT_EQ(bets[0], space->canonical_least());
  std::uint64_t start = 0;
  for (std::size_t i = 0; i + 1 < s.phases().size(); ++i) {
    start += s.phases()[i].length;
    ASSERT_TRUE(s.phases()[i].best);
    EXPECT_EQ(bets[start], *s.phases()[i].best);
    // the hitting set reaches the top point once delta < 1/2
    if (s.phases()[i].delta < 0.5) {
      EXPECT_EQ(*s.phases()[i].best, Point::at(2)) << i;
    }
  }
  EXPECT_EQ(s.current_best(), Point::at(2));
}

TEST(NaiveExperts, UniformVariantEmpiricalConstant) {
  // Reports C = max over phases of (mu(y*) - mu(x*)) / (delta ln T), where y* is
  // the best net point by true mean and x* the sample-average winner.
  auto space = interval();
  LineageInstance inst(space, {.depth = 6, .gamma = 0.25, .seed = 5, .biases = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}, .choice = {}});
  double worst = 0.0;
  int trials = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NaiveExperts s(space, 2.0, true);
    std::vector<double> v;
    for (std::uint64_t t = 1; t < (1u << 10); ++t) {
      const Action& a = s.choose();
      auto pi = inst.sample(round_key(seed, t));
      v.clear();
      for (const auto& q : a.queries) v.push_back(pi(q));
      s.observe(v);
    }
    for (std::size_t i = 2; i + 1 < s.phases().size(); ++i) {
      const auto& p = s.phases()[i];
      auto net = cover_to_delta(*space, p.delta, 4096).points;
      double best = 0.0;
      for (const auto& x : net) best = std::max(best, inst.mean(x));
      double gap = best - inst.mean(*p.best);
      worst = std::max(worst, gap / (p.delta * std::log(double(p.length))));
      ++trials;
    }
  }
  RecordProperty("empirical_constant", std::to_string(worst));
  EXPECT_GT(trials, 50);
  EXPECT_TRUE(std::isfinite(worst));
}

TEST(MaxMinLcd, QuotaArithmetic) {
  auto dec = std::make_shared<const DepthStructure>(DepthStructure::trivial(interval()));
  MaxMinLcdExperts s(dec, {.b = 2.0, .uniform = false, .net_cap = 4096, .quota_cap = 4096});
  EXPECT_DOUBLE_EQ(s.phase_delta(65536.0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(s.log2_quota(1.0 / 16.0), 256.0);
  EXPECT_DOUBLE_EQ(MaxMinLcdExperts::r_T(65536.0, 16), std::sqrt(8.0 * std::log(65536.0 * 16.0) / 65536.0));
}

TEST(MaxMinLcd, PhaseBookkeepingMatchesRecomputation) {
  auto space = interval();
  auto dec = std::make_shared<const DepthStructure>(DepthStructure::trivial(space));
  const std::size_t cap = 256;
  MaxMinLcdExperts s(dec, {.b = 2.0, .uniform = false, .net_cap = cap, .quota_cap = 1024});
  PeakInstance inst(space, Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  drive(s, inst, (1u << 9) - 1, 3);
  ASSERT_EQ(s.phases().size(), 9u);
  for (const auto& p : s.phases()) {
    double T = double(p.length);
    double bound = std::min<double>(double(cap), std::floor(std::exp2(std::sqrt(T))));
    // interval nets at radius 2^-j have max(1, 2^{j-1}) points
    int j = 0;
    while (std::max(1.0, std::exp2(j)) <= bound) ++j;
    EXPECT_EQ(p.j, j) << p.index;
    EXPECT_EQ(p.net_size, static_cast<std::size_t>(std::max(1.0, std::exp2(j - 1))));
    EXPECT_DOUBLE_EQ(p.r_T, std::sqrt(8.0 * std::log(T * double(p.net_size)) / T));
    EXPECT_DOUBLE_EQ(p.delta, std::pow(T, -0.25));
    EXPECT_DOUBLE_EQ(p.log2_quota, std::pow(p.delta, -2.0));
    EXPECT_EQ(p.quota_flag, p.log2_quota > 10.0);
    EXPECT_LE(p.active_size, 1024u);
  }
  EXPECT_TRUE(s.phases().back().quota_flag);
}

TEST(MaxMinLcd, DepthEstimateFindsSingletonLevel) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto cfg = ExperimentConfig::from_json(
        {{"space", {{"kind", "interval"}}},
         {"instance", {{"kind", "peak"}, {"peak", 0.3}, {"slope", 1.0}, {"top", 0.9}}},
         {"algorithm", {{"name", "maxminlcd"}, {"b", 1.0}, {"net_cap", 16}, {"decomposition", {{"levels", {{{"points", {0.3}}}}}}}}},
         {"horizon", (1 << 11) - 1},
         {"seeds", {seed}}});
    auto tr = run_match(cfg);
    const auto& ph = tr.metadata["report"]["phases"];
    bool ok = true;
    for (std::size_t i = ph.size() - 3; i < ph.size(); ++i) ok = ok && ph[i]["lambda"] == 1 && ph[i]["depth_point"] == 0.3;
    good += ok;
  }
  EXPECT_GE(good, 24);
}

TEST(MaxMinLcd, TrivialDecompositionSublinear) {
  auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "interval"}}},
                                          {"instance", {{"kind", "peak"}, {"peak", 0.3}, {"slope", 1.0}, {"top", 0.9}}},
                                          {"algorithm", {{"name", "maxminlcd"}, {"b", 1.0}, {"net_cap", 256}}},
                                          {"horizon", 1 << 14},
                                          {"replicates", 20}});
  auto res = run_replicates(cfg, 4);
  int good = 0;
  for (const auto& t : res.traces) good += fit_tail(t, 4).slope < 0.9;
  EXPECT_GE(good, 16);
}

TEST(FullFeedback, RewardDependsOnlyOnBet) {
  auto space = interval();
  PeakInstance inst(space, Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "interval"}}},
                                          {"instance", {{"kind", "peak"}, {"peak", 0.3}, {"slope", 1.0}, {"top", 0.9}}},
                                          {"algorithm", {{"name", "naive_experts"}, {"b", 1.0}}},
                                          {"horizon", 1000},
                                          {"record_bets", true}});
  auto tr = run_match(cfg);
  for (std::uint64_t t = 1; t <= 1000; ++t)
    ASSERT_EQ(tr.reward[t - 1], inst.realize(round_key(cfg.seed_list()[0], t), tr.bets[t - 1]));
}
