#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"
#include "liplab/verify.hpp"

using namespace liplab;

namespace {

SpacePtr interval() { return std::make_shared<IntervalSpace>(); }

double plain_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

}  // namespace

TEST(Kl, Examples) {
  FiniteMeasure u{{0.25, 0.25, 0.25, 0.25}, {}};
  EXPECT_EQ(kl_divergence(u, u), 0.0);
  EXPECT_NEAR(kl_bernoulli(0.25, 0.5), 0.13081203594113697, 1e-15);
  EXPECT_NEAR(kl_divergence(FiniteMeasure::bernoulli(0.25), FiniteMeasure::bernoulli(0.5)), 0.13081203594113697, 1e-15);
  EXPECT_EQ(kl_divergence(FiniteMeasure{{0.0, 1.0}, {}}, FiniteMeasure{{1.0, 0.0}, {}}), std::numeric_limits<double>::infinity());
  // p-null atoms contribute nothing even where q is null
  EXPECT_EQ(kl_divergence(FiniteMeasure{{1.0, 0.0}, {}}, FiniteMeasure{{1.0, 0.0}, {}}), 0.0);
}

TEST(Kl, NonnegativeAndZeroOnlyWhenEqual) {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(5), b(5);
    double sa = 0, sb = 0;
    for (int i = 0; i < 5; ++i) {
      a[i] = rng.uniform() + 1e-3;
      b[i] = rng.uniform() + 1e-3;
      sa += a[i];
      sb += b[i];
    }
    for (int i = 0; i < 5; ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    double k = kl_divergence(FiniteMeasure{a, {}}, FiniteMeasure{b, {}});
    ASSERT_GT(k, 0.0);
    ASSERT_NEAR(k, plain_kl(a, b), 1e-12);
  }
}

TEST(Kl, Errors) {
  EXPECT_THROW(kl_divergence(FiniteMeasure{{1.0}, {}}, FiniteMeasure{{0.5, 0.5}, {}}), ValidationError);
  EXPECT_THROW(kl_divergence(FiniteMeasure{{0.5, 0.5}, {"a", "b"}}, FiniteMeasure{{0.5, 0.5}, {"a", "c"}}), ValidationError);
  EXPECT_THROW(FiniteMeasure({0.5, 0.6}, {}).validate(), ValidationError);
  EXPECT_THROW(FiniteMeasure({1.5, -0.5}, {}).validate(), ValidationError);
  EXPECT_THROW(kl_bernoulli(1.2, 0.5), ValidationError);
}

TEST(KlChain, SingleCoordinateIsPlainKl) {
  ProductMeasure p{3, 1, {0.2, 0.5, 0.3}}, q{3, 1, {0.4, 0.4, 0.2}};
  auto c = kl_chain_check(p, q);
  EXPECT_NEAR(c.lhs, plain_kl(p.p, q.p), 1e-15);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(KlChain, IndependentCoordinatesSumMarginals) {
  std::vector<double> p1{0.3, 0.7}, q1{0.6, 0.4}, p2{0.1, 0.9}, q2{0.5, 0.5}, p3{0.8, 0.2}, q3{0.7, 0.3};
  ProductMeasure p{2, 3, {}}, q{2, 3, {}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        p.p.push_back(p1[a] * p2[b] * p3[c]);
        q.p.push_back(q1[a] * q2[b] * q3[c]);
      }
  auto r = kl_chain_check(p, q);
  EXPECT_NEAR(r.rhs, plain_kl(p1, q1) + plain_kl(p2, q2) + plain_kl(p3, q3), 1e-12);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(KlChain, CorrelatedTwoCoordinates) {
  ProductMeasure p{2, 2, {0.1, 0.4, 0.3, 0.2}}, q{2, 2, {0.25, 0.15, 0.2, 0.4}};
  // marginal of coordinate 0, then conditionals of coordinate 1 given it
  double pa[2] = {p.p[0] + p.p[1], p.p[2] + p.p[3]}, qa[2] = {q.p[0] + q.p[1], q.p[2] + q.p[3]};
  double rhs = plain_kl({pa[0], pa[1]}, {qa[0], qa[1]});
  for (int a = 0; a < 2; ++a)
    rhs += pa[a] * plain_kl({p.p[2 * a] / pa[a], p.p[2 * a + 1] / pa[a]}, {q.p[2 * a] / qa[a], q.p[2 * a + 1] / qa[a]});
  auto r = kl_chain_check(p, q);
  EXPECT_NEAR(r.lhs, plain_kl(p.p, q.p), 1e-15);
  EXPECT_NEAR(r.rhs, rhs, 1e-15);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(KlChain, RandomProductsUpToCap) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    ProductMeasure p{3, 4, {}}, q{3, 4, {}};
    double sp = 0, sq = 0;
    for (int i = 0; i < 81; ++i) {
      p.p.push_back(rng.uniform() + 1e-3);
      q.p.push_back(rng.uniform() + 1e-3);
      sp += p.p.back();
      sq += q.p.back();
    }
    for (auto& x : p.p) x /= sp;
    for (auto& x : q.p) x /= sq;
    ASSERT_LE(kl_chain_check(p, q).residual, 1e-12);
  }
  ProductMeasure big{2, 20, std::vector<double>(1u << 20, 1.0 / (1u << 20))};
  EXPECT_THROW(kl_chain_check(big, big), ValidationError);
}

TEST(KlBounds, DenseGridsHaveNoViolations) {
  auto reps = kl_bounds_report(10);
  ASSERT_EQ(reps.size(), 3u);
  for (const auto& r : reps) {
    EXPECT_GT(r.cases, 0u) << r.lemma;
    EXPECT_EQ(r.violations, 0u) << r.lemma << " " << r.worst.dump();
    EXPECT_GT(r.min_margin, 0.0) << r.lemma;
  }
  EXPECT_EQ(reps[0].lemma, "bernoulli_kl");
  EXPECT_EQ(reps[1].lemma, "distinguishing");
  EXPECT_EQ(reps[2].lemma, "reverse_pinsker");
}

TEST(KlBounds, PointExamples) {
  double k = kl_bernoulli(0.4, 0.5);
  EXPECT_NEAR(k, 0.020135513550688863, 1e-15);
  EXPECT_LT(k, 0.1 * 0.1 / (0.5 * 0.5));
  // p = q: q(E) = p(E) against p(E) exp(-(0 + 1/e) / p(E)) with E one atom of {0.3, 0.7}
  double pe = 0.3;
  EXPECT_GT(pe, pe * std::exp(-(0.0 + 1.0 / std::exp(1.0)) / pe));
  FiniteMeasure m{{0.2, 0.3, 0.5}, {}};
  for (double d : {0.01, 0.1, 0.4}) EXPECT_LT(kl_divergence(m, m), d * d);
}

TEST(Ensemble, DegenerateEqualMeasures) {
  EnsembleSpec s;
  FiniteMeasure u{{0.5, 0.5}, {}};
  s.measures = {u, u, u};
  s.subsets = {{0}, {1}};
  s.means = {{0.5, 0.5}, {0.5, 0.5}};
  s.eps = 0.0;
  s.delta = 0.2;
  auto r = ensemble_check(s);
  EXPECT_TRUE(r.structural);
  EXPECT_TRUE(r.property1);
  EXPECT_DOUBLE_EQ(r.margin1, 0.2);
  EXPECT_TRUE(r.property2);  // eps = 0 and a zero gap
  s.eps = 0.1;
  r = ensemble_check(s);
  EXPECT_FALSE(r.property2);
  EXPECT_FALSE(r.pass());
}

TEST(Ensemble, SiblingConstruction) {
  const double bias = 0.2, radius = 0.25;
  auto s = sibling_ensemble(bias, radius, bias);
  auto r = ensemble_check(s);
  EXPECT_TRUE(r.structural);
  EXPECT_TRUE(r.property2);
  EXPECT_NEAR(r.margin2, 0.0, 1e-15);
  // atom ratios are 1 / (1 +- bias): 1 / (1 - bias) lies above 1 + bias
  EXPECT_NEAR(r.min_ratio, 1.0 / (1.0 + bias), 1e-15);
  EXPECT_NEAR(r.max_ratio, 1.0 / (1.0 - bias), 1e-15);
  EXPECT_FALSE(r.property1);
  for (double k : r.kl) EXPECT_LT(k, bias * bias);

  s.delta = bias / (1.0 - bias) + 1e-9;
  EXPECT_TRUE(ensemble_check(s).pass());
}

TEST(Ensemble, StructuralFailures) {
  auto s = sibling_ensemble(0.2, 0.25, 0.3);
  s.subsets = {{0, 2}, {2}};
  auto r = ensemble_check(s);
  EXPECT_FALSE(r.structural);
  EXPECT_FALSE(r.pass());
  EXPECT_NE(r.message.find("overlap"), std::string::npos);

  s = sibling_ensemble(0.2, 0.25, 0.3);
  s.measures.pop_back();
  EXPECT_FALSE(ensemble_check(s).structural);
  s = sibling_ensemble(0.2, 0.25, 0.3);
  s.delta = 0.5;
  EXPECT_THROW(ensemble_check(s), ValidationError);
}

TEST(Ensemble, HorizonRaisesRatios) {
  auto s = sibling_ensemble(0.1, 0.25, 0.3);
  s.horizon = 3;
  auto r = ensemble_check(s);
  EXPECT_NEAR(r.max_ratio, std::pow(1.0 / 0.9, 3), 1e-12);
  EXPECT_NEAR(r.kl[0], 3.0 * kl_divergence(s.measures[1], s.measures[0]), 1e-15);
}

TEST(LowerBoundTime, Examples) {
  EXPECT_EQ(lb_time_threshold(0.1, 0.2, 2), 44u);
  EXPECT_EQ(lb_time_threshold(0.1, 0.5, 2), 7u);
  EXPECT_EQ(lb_time_threshold(0.1, 0.2, 3), static_cast<std::uint64_t>(std::floor(std::log(51.0) / 0.08)));
}

TEST(LowerBoundTime, Monotone) {
  std::uint64_t prev = 0;
  for (std::size_t k = 2; k < 200; ++k) {
    auto t = lb_time_threshold(0.1, 0.1, k);
    ASSERT_GE(t, prev);
    prev = t;
  }
  prev = std::numeric_limits<std::uint64_t>::max();
  for (double d = 0.01; d <= 0.5; d += 0.01) {
    auto t = lb_time_threshold(0.1, d, 4);
    ASSERT_LE(t, prev);
    prev = t;
  }
}

TEST(LowerBoundTime, DomainErrors) {
  EXPECT_THROW(lb_time_threshold(0.0, 0.2, 2), ValidationError);
  EXPECT_THROW(lb_time_threshold(0.1, 0.0, 2), ValidationError);
  EXPECT_THROW(lb_time_threshold(0.1, 0.6, 2), ValidationError);
  EXPECT_THROW(lb_time_threshold(0.1, 0.2, 1), ValidationError);
}

TEST(LogtKl, Cases) {
  std::vector<Point> seq{Point::real(0.5), Point::real(0.2), Point::real(0.05)};
  auto ens = make_logt_ensemble(interval(), seq, Point::real(0.0));
  const auto& mu0 = *ens[0];
  const auto& mu1 = *ens[1];

  std::vector<std::vector<Point>> never(5, std::vector<Point>(100, Point::real(0.95)));
  auto r = logt_kl_check(mu0, mu1, never);
  EXPECT_EQ(r.mean_lhs, 0.0);
  EXPECT_EQ(r.mean_rhs, 0.0);
  EXPECT_TRUE(r.pass());

  const double rad = mu1.radius(1);
  std::vector<std::vector<Point>> always(1, std::vector<Point>(100, mu1.center(1)));
  r = logt_kl_check(mu0, mu1, always);
  EXPECT_DOUBLE_EQ(r.mean_rhs, rad * rad / 3.0 * 100.0);
  EXPECT_NEAR(r.mean_lhs, 100.0 * kl_bernoulli(mu0.mean(mu1.center(1)), mu1.mean(mu1.center(1))), 1e-12);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.min_margin, 0.0);

  r = logt_kl_check(mu0, mu0, always);
  EXPECT_EQ(r.mean_lhs, 0.0);
  EXPECT_TRUE(r.pass());

  EXPECT_THROW(logt_kl_check(mu1, mu0, always), ValidationError);
  EXPECT_THROW(logt_kl_check(mu0, mu1, {}), ValidationError);
}

TEST(Lipschitz, PeakPasses) {
  PeakInstance inst(interval(), Point::real(0.3), 1.0, 0.9, NoiseModel::none);
  Rng rng(1);
  auto c = lipschitz_certify(inst, 5000, 5, rng);
  EXPECT_TRUE(c.pass());
  EXPECT_LE(c.max_mean_violation, 1e-15);  // rounding in |a - b| - d only
}

TEST(Lipschitz, LineagePasses) {
  LineageInstance inst(interval(), {.depth = 8, .gamma = 0.25, .seed = 2, .biases = {0.5, 0.4, 0.3, 0.3, 0.2, 0.2, 0.1, 0.1}, .choice = {}});
  Rng rng(2);
  auto c = lipschitz_certify(inst, 10000, 10, rng);
  EXPECT_TRUE(c.samples_checked);
  EXPECT_TRUE(c.pass()) << c.to_json().dump();
}

TEST(Lipschitz, SteepPeakFails) {
  PeakInstance inst(interval(), Point::real(0.3), 2.0, 0.9, NoiseModel::none, true);
  Rng rng(3);
  auto c = lipschitz_certify(inst, 2000, 2, rng);
  EXPECT_FALSE(c.pass());
  EXPECT_GT(c.max_mean_violation, 0.1);
}
