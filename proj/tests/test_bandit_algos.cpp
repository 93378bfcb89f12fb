#include <gtest/gtest.h>

#include <cmath>

#include "liplab/bandit_algos.hpp"
#include "liplab/errors.hpp"
#include "liplab/harness.hpp"
#include "liplab/instances.hpp"

using namespace liplab;
using nlohmann::json;

namespace {

SpacePtr interval() { return std::make_shared<IntervalSpace>(); }

// Plays one fixed point and keeps every value it is fed.
class FixedBet final : public AlgorithmSession {
 public:
  FixedBet(SpacePtr s, Point x) : AlgorithmSession(std::move(s), FeedbackMode::bandit), x_(std::move(x)) {}
  std::string name() const override { return "fixed"; }
  json params() const override { return {{"name", "fixed"}}; }
  std::vector<double> seen;

 protected:
  Action next_action() override { return Action{x_, {}}; }
  void absorb(const Action&, std::span<const double> v) override { seen.push_back(v[0]); }

 private:
  Point x_;
};

json sequence_config(const std::string& algo, std::uint64_t horizon, std::size_t replicates) {
  return {{"space", {{"kind", "sequence"}, {"terms", 100}}},
          {"instance", {{"kind", "peak"}, {"peak", 0.0}, {"slope", 1.0}, {"top", 1.0}}},
          {"algorithm", {{"name", algo}, {"growth", "log2"}}},
          {"horizon", horizon},
          {"replicates", replicates},
          {"record_bets", true}};
}

}  // namespace

TEST(Ucb1, SingleArm) {
  Ucb1 u(1);
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(u.select(), 0u);
    u.update(0, 0.3);
  }
}

TEST(Ucb1, ZeroNoiseIndexTrace) {
  // Rounds at which arm 0 (mean 0.2) is pulled after initialization against
  // arm 1 (mean 0.8), from an independent evaluation of the index rule.
  const std::vector<int> expected{5, 9, 15, 21, 28, 37, 47, 59, 72, 87};
  Ucb1 u(2);
  const double mu[2] = {0.2, 0.8};
  std::vector<int> got;
  for (int round = 1; round <= 90; ++round) {
    auto a = u.select();
    if (round > 2 && a == 0) got.push_back(round);
    u.update(a, mu[a]);
  }
  EXPECT_EQ(got, expected);
}

TEST(Ucb1, ReplayMatchesIndependentIndex) {
  auto space = std::make_shared<FiniteSpace>(FiniteSpace::uniform(3));
  TableInstance inst(space, {0.3, 0.5, 0.45}, NoiseModel::bernoulli);
  Ucb1Session s(space);
  std::vector<double> n(3, 0), sum(3, 0);
  for (std::uint64_t t = 1; t <= 2000; ++t) {
    std::size_t want = 0;
    double best = -INFINITY;
    for (std::size_t j = 0; j < 3; ++j) {
      double idx = n[j] == 0 ? INFINITY : sum[j] / n[j] + std::sqrt(2.0 * std::log(double(t - 1)) / n[j]);
      if (idx > best) best = idx, want = j;
    }
    const Action& a = s.choose();
    ASSERT_EQ(a.bet.index, static_cast<std::int64_t>(want)) << t;
    double v = inst.realize(round_key(3, t), a.bet);
    s.observe(std::span<const double>(&v, 1));
    n[want] += 1;
    sum[want] += v;
  }
}

TEST(Ucb1, TwoArmBernoulliRegret) {
  auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "finite"}, {"uniform", 2}}},
                                          {"instance", {{"kind", "table"}, {"means", {0.5, 0.6}}}},
                                          {"algorithm", {{"name", "ucb1"}}},
                                          {"horizon", 1 << 14},
                                          {"replicates", 30}});
  auto res = run_replicates(cfg, 4);
  int good = 0;
  for (const auto& t : res.traces) good += t.cum_regret.back() / double(1 << 14) < 0.05;
  EXPECT_GE(good, 24);
}

TEST(Protocol, AlternationEnforced) {
  auto s = make_session(std::make_shared<FiniteSpace>(FiniteSpace::uniform(2)), {{"name", "ucb1"}});
  double v = 0.5;
  EXPECT_THROW(s->observe(std::span<const double>(&v, 1)), ProtocolError);
  s->choose();
  EXPECT_THROW(s->choose(), ProtocolError);
  std::vector<double> two{0.1, 0.2};
  EXPECT_THROW(s->observe(two), ProtocolError);
  s->observe(std::span<const double>(&v, 1));
  EXPECT_EQ(s->t(), 1u);
}

TEST(Expl, TwoPointHandTrace) {
  auto s = FiniteSpace::from_coords({0.0, 1.0});
  const double mu[2] = {0.1, 0.9};
  auto run = ExplorationRun::expl(s, 2, 3, 0.1);
  EXPECT_EQ(run.delta(), 0.0);
  while (!run.done()) run.record(mu[run.next().index]);
  EXPECT_EQ(run.pulls(), 6u);
  auto elim = run.eliminated();
  EXPECT_TRUE(elim[0]);
  EXPECT_FALSE(elim[1]);
  EXPECT_EQ(*run.result(), Point::at(1));
}

TEST(Expl, Singleton) {
  auto s = FiniteSpace::uniform(1);
  EXPECT_EQ(expl(s, 5, 4, 0.3, [](const Point&) { return 0.2; }), Point::at(0));
}

TEST(Expl, FindsLimitPointMostOfTheTime) {
  auto space = std::make_shared<CountableSpace>(CountableSpace::sequence(50));
  PeakInstance inst(space, space->find(0.0), 1.0, 1.0, NoiseModel::bernoulli);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::uint64_t t = 0;
    std::size_t pulls = 0;
    auto run = ExplorationRun::expl(*space, 20, 1000, 0.05);
    while (!run.done()) {
      ++pulls;
      run.record(inst.realize(round_key(seed, ++t), run.next()));
    }
    EXPECT_EQ(pulls, run.strategies().size() * 1000);
    hits += *run.result() == space->find(0.0);
  }
  EXPECT_GE(hits, 45);
}

TEST(ExplPrime, ZeroNoiseDominance) {
  auto space = CountableSpace::sequence(10);
  auto peak0 = [](const Point& p) { return 0.9 - p.coord; };
  EXPECT_EQ(expl_prime(space, 20, 1, 0.01, peak0), space.find(0.0));

  auto flat = [](const Point&) { return 0.5; };
  EXPECT_EQ(expl_prime(space, 20, 1, 0.01, flat), space.find(0.0));

  auto peak1 = [](const Point& p) { return 1.0 - 0.5 * std::abs(p.coord - 1.0); };
  EXPECT_EQ(expl_prime(space, 20, 1, 0.1, peak1), space.find(1.0));
}

TEST(ExplPrime, BudgetBound) {
  CountableSpace two({CountableSpace::Cluster{0.0, 1.0, 2, 5}});
  const std::size_t k = 4, n = 3;
  auto run = ExplorationRun::expl_prime(two, k, n, 0.1);
  EXPECT_LE(run.budget(), k * n * static_cast<std::size_t>(two.cb_rank() + 1));
  EXPECT_THROW(ExplorationRun::expl_prime(IntervalSpace(), 4, 1, 0.1), CapabilityError);
}

TEST(WellOrdered, PhaseLengths) {
  const std::uint64_t want[] = {2, 4, 16, 256, 65536, std::uint64_t{1} << 32};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(WellOrderedBandit::phase_length(i), want[i]);
  EXPECT_EQ(WellOrderedBandit::phase_length(7), std::numeric_limits<std::uint64_t>::max());
}

TEST(WellOrdered, SingletonZeroRegret) {
  for (std::string algo : {"well_ordered", "cb_bandit"}) {
    auto cfg = ExperimentConfig::from_json({{"space", {{"kind", "finite"}, {"uniform", 1}}},
                                            {"instance", {{"kind", "table"}, {"means", {0.4}}}},
                                            {"algorithm", {{"name", algo}}},
                                            {"horizon", 3000}});
    auto tr = run_match(cfg);
    EXPECT_EQ(tr.cum_regret.back(), 0.0) << algo;
  }
}

TEST(WellOrdered, ReplayIdentical) {
  for (std::string algo : {"well_ordered", "cb_bandit"}) {
    auto cfg = ExperimentConfig::from_json(sequence_config(algo, 5000, 1));
    EXPECT_EQ(trace_digest(run_match(cfg)), trace_digest(run_match(cfg))) << algo;
  }
}

TEST(WellOrdered, LastPhasePlaysLimit) {
  for (std::string algo : {"well_ordered", "cb_bandit"}) {
    auto cfg = ExperimentConfig::from_json(sequence_config(algo, 1 << 16, 30));
    auto res = run_replicates(cfg, 4);
    ASSERT_TRUE(res.complete());
    // phases 2, 4, 16, 256 precede the last (partial) phase
    const std::size_t start = 2 + 4 + 16 + 256;
    int good = 0;
    for (const auto& t : res.traces) {
      std::size_t at0 = 0;
      for (std::size_t i = start; i < t.bets.size(); ++i) at0 += t.bets[i].coord == 0.0;
      good += double(at0) / double(t.bets.size() - start) > 0.9;
    }
    EXPECT_GE(good, 24) << algo;
  }
}

TEST(WellOrdered, DegeneratePhasesFlagged) {
  WellOrderedBandit b(std::make_shared<CountableSpace>(CountableSpace::sequence(100)), Growth::parse("log2"));
  double v = 0.5;
  for (int t = 0; t < 300; ++t) {
    b.choose();
    b.observe(std::span<const double>(&v, 1));
  }
  ASSERT_GE(b.phases().size(), 4u);
  for (const auto& p : b.phases()) EXPECT_EQ(p.degenerate, p.cost > p.length);
  EXPECT_THROW(Growth::parse("cubic"), ValidationError);
}

TEST(PhasedUcb1, ScheduleOnInterval) {
  // Independent evaluation with N_k = 2^{k-1} for the interval.
  const std::vector<std::uint64_t> expected{222, 2840, 31231, 317983, 3088975, 29072700};
  PhasedUcb1 p(interval());
  EXPECT_EQ(p.schedule(6), expected);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(p.net_size(k), std::size_t{1} << (k - 1));
}

TEST(PhasedUcb1, PhasesFollowSchedule) {
  auto space = interval();
  PhasedUcb1 p(space);
  PeakInstance inst(space, Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  for (std::uint64_t t = 1; t <= 3000; ++t) {
    const auto& a = p.choose();
    double v = inst.realize(round_key(1, t), a.bet);
    p.observe(std::span<const double>(&v, 1));
  }
  auto sched = p.schedule(2);
  ASSERT_EQ(p.phases().size(), 2u);
  EXPECT_EQ(p.phases()[0].length, sched[0]);
  EXPECT_EQ(p.phases()[1].length, sched[1]);
  EXPECT_EQ(p.phases()[1].start, sched[0]);
  EXPECT_DOUBLE_EQ(p.phases()[1].eps, 0.25);
}

TEST(PhasedUcb1, FiniteNetSaturates) {
  auto space = std::make_shared<FiniteSpace>(FiniteSpace::from_coords({0.0, 0.5, 1.0}));
  PhasedUcb1 p(space);
  EXPECT_EQ(p.net_size(8), 3u);
}

TEST(Completion, IdentityRoundingMatchesInner) {
  auto space = std::make_shared<CountableSpace>(CountableSpace::sequence(30));
  PeakInstance inst(space, space->find(0.0), 1.0, 1.0, NoiseModel::none);
  auto bare = make_session(space, {{"name", "well_ordered"}});
  CompletionAdapter wrapped(space, make_session(space, {{"name", "well_ordered"}}), identity_rounding(), 5, false);
  for (std::uint64_t t = 1; t <= 2000; ++t) {
    const auto& a = bare->choose();
    const auto& b = wrapped.choose();
    ASSERT_EQ(a.bet, b.bet) << t;
    double v = inst.mean(a.bet);
    bare->observe(std::span<const double>(&v, 1));
    wrapped.observe(std::span<const double>(&v, 1));
  }
}

TEST(Completion, DyadicPerturbation) {
  auto outer = std::make_shared<DyadicSpace>(20);
  auto inner = interval();
  CompletionAdapter c(outer, make_session(inner, {{"name", "phased_ucb1"}}), dyadic_rounding(outer), 2);
  PeakInstance inst(outer, outer->at(311296), 1.0, 0.9, NoiseModel::bernoulli);
  for (std::uint64_t t = 1; t <= 20; ++t) {
    const auto& a = c.choose();
    double v = inst.realize(round_key(2, t), a.bet);
    c.observe(std::span<const double>(&v, 1));
    EXPECT_LT(c.last_perturbation(), std::ldexp(1.0, -static_cast<int>(t))) << t;
  }
  EXPECT_EQ(c.stalls(), 0u);
  for (std::uint64_t t = 21; t <= 40; ++t) {
    c.choose();
    double v = 0.5;
    c.observe(std::span<const double>(&v, 1));
  }
  EXPECT_EQ(c.stalls(), 20u);
}

TEST(Completion, RerandomizationPreservesMean) {
  auto space = interval();
  auto inner = std::make_unique<FixedBet>(space, Point::real(0.4));
  auto* raw = inner.get();
  CompletionAdapter c(space, std::move(inner), identity_rounding(), 17, true);
  const double pi = 0.37;
  const std::size_t n = 100000;
  for (std::size_t t = 0; t < n; ++t) {
    c.choose();
    c.observe(std::span<const double>(&pi, 1));
  }
  double s = 0.0;
  for (double v : raw->seen) {
    ASSERT_TRUE(v == 0.0 || v == 1.0);
    s += v;
  }
  double m = s / double(n);
  EXPECT_LE(std::abs(m - pi), 3.0 * std::sqrt(pi * (1 - pi) / double(n)));
}

TEST(Registry, KnownNamesAndErrors) {
  auto names = algorithm_names();
  for (std::string n : {"ucb1", "phased_ucb1", "well_ordered", "cb_bandit", "completion", "double_feedback", "naive_experts", "maxminlcd"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_THROW(make_session(interval(), {{"name", "exp3"}}), ValidationError);
  EXPECT_THROW(make_session(interval(), {{"name", "ucb1"}}), CapabilityError);
  EXPECT_THROW(make_session(interval(), {{"name", "phased_ucb1"}, {"kcap", 3}}), ValidationError);
}
