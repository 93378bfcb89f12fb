#include <gtest/gtest.h>

#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"
#include "liplab/spaces.hpp"

using namespace liplab;

namespace {

SpacePtr interval() { return std::make_shared<IntervalSpace>(); }

std::uint64_t key_of(std::uint64_t seed, std::uint64_t t) { return Rng(seed).split("mc").split(t).key(); }

struct MonteCarlo {
  double mean = 0.0, se = 0.0;
};

MonteCarlo monte_carlo(const PayoffInstance& inst, const Point& x, std::size_t n, std::uint64_t seed) {
  double s = 0.0, s2 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double v = inst.realize(key_of(seed, t), x);
    s += v;
    s2 += v * v;
  }
  MonteCarlo m;
  m.mean = s / static_cast<double>(n);
  double var = std::max(0.0, s2 / static_cast<double>(n) - m.mean * m.mean);
  m.se = std::sqrt(var / static_cast<double>(n));
  return m;
}

// mu from the tree directly: 1/2 plus bias * needle over every lineage node.
double lineage_oracle(const LineageInstance& inst, const Point& x) {
  const auto& tree = inst.tree();
  double v = 0.5;
  for (std::size_t i = 1; i < tree.nodes().size(); ++i) {
    if (!inst.in_lineage(i)) continue;
    const auto& n = tree.node(i);
    v += inst.bias(n.depth) * needle(tree.space(), n.center, n.radius, x);
  }
  return v;
}

}  // namespace

TEST(Needle, Examples) {
  IntervalSpace s;
  EXPECT_DOUBLE_EQ(needle(s, Point::real(0.5), 0.4, Point::real(0.5)), 0.2);
  EXPECT_EQ(needle(s, Point::real(0.5), 0.4, Point::real(0.9)), 0.0);
  EXPECT_EQ(needle(s, Point::real(0.5), 0.4, Point::real(0.95)), 0.0);
  EXPECT_NEAR(needle(s, Point::real(0.5), 0.4, Point::real(0.8)), 0.1, 1e-15);
}

TEST(Peak, Examples) {
  PeakInstance p(interval(), Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  EXPECT_DOUBLE_EQ(p.mean(Point::real(0.3)), 0.9);
  EXPECT_NEAR(p.mean(Point::real(0.8)), 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(p.mean(Point::real(0.1)), p.mean(Point::real(0.5)));
  EXPECT_EQ(p.sup_mean(), 0.9);
  EXPECT_THROW(PeakInstance(interval(), Point::real(0.0), 1.0, 0.3, NoiseModel::none), ValidationError);
  PeakInstance clamped(interval(), Point::real(0.0), 2.0, 0.9, NoiseModel::none, true);
  EXPECT_EQ(clamped.mean(Point::real(0.9)), 0.0);
  EXPECT_TRUE(clamped.guarantee_breaking());
}

TEST(Peak, ZeroNoiseSampleIsMean) {
  PeakInstance p(interval(), Point::real(0.3), 0.5, 0.8, NoiseModel::none);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Point x = p.space().sample(rng);
    EXPECT_EQ(p.sample(rng()).operator()(x), p.mean(x));
  }
}

TEST(Peak, BernoulliMonteCarlo) {
  PeakInstance p(interval(), Point::real(0.3), 1.0, 0.9, NoiseModel::bernoulli);
  for (double x : {0.3, 0.55, 0.9}) {
    auto mc = monte_carlo(p, Point::real(x), 100000, 11);
    EXPECT_LE(std::abs(mc.mean - p.mean(Point::real(x))), 3 * mc.se) << x;
  }
}

TEST(Sample, Coherent) {
  auto inst = make_instance(interval(), {{"kind", "lineage"}, {"depth", 6}, {"seed", 2}});
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    auto s = inst->sample(rng());
    Point x = inst->probe(rng);
    EXPECT_EQ(s(x), s(x));
  }
}

TEST(Lineage, OutsideEveryBallIsHalf) {
  LineageInstance inst(interval(), {.depth = 6, .gamma = 0.25, .seed = 1, .biases = {}, .choice = {}});
  const auto& root = inst.tree().node(0);
  // The root ball covers the interval; a point outside both depth-1 balls.
  const auto& a = inst.tree().node(1);
  const auto& b = inst.tree().node(2);
  Rng rng(1);
  int found = 0;
  for (int i = 0; i < 1000 && found < 20; ++i) {
    Point x = inst.space().sample(rng);
    if (inst.space().distance(x, a.center) >= a.radius && inst.space().distance(x, b.center) >= b.radius) {
      EXPECT_EQ(inst.mean(x), 0.5);
      ++found;
    }
  }
  EXPECT_GT(found, 0);
  EXPECT_EQ(root.radius, 1.0);
}

TEST(Lineage, MeanMatchesTreeOracle) {
  LineageInstance inst(interval(), {.depth = 8, .gamma = 0.25, .seed = 4, .biases = {0.4, 0.3, 0.3, 0.2, 0.2, 0.2, 0.1, 0.1}, .choice = {}});
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    Point x = inst.probe(rng);
    ASSERT_NEAR(inst.mean(x), lineage_oracle(inst, x), 1e-14);
  }
  EXPECT_NEAR(inst.mean(inst.argmax()), inst.sup_mean(), 1e-14);
}

TEST(Lineage, PlateauClosedForm) {
  // Depth-i lineage node's plateau away from its children: 1/2 + sum_{j<=i} delta_j r_j / 2.
  std::vector<int> choice(7, 1);
  LineageInstance inst(interval(), {.depth = 3, .gamma = 0.25, .seed = 0, .biases = {0.5, 0.5, 0.5}, .choice = choice});
  const auto& tree = inst.tree();
  std::size_t node = 0;
  double expected = 0.5;
  for (int d = 1; d <= 2; ++d) {
    node = BallTree::child(node, 1);
    expected += 0.5 * tree.node(node).radius / 2.0;
  }
  const auto& n = tree.node(node);
  const auto& c0 = tree.node(BallTree::child(node, 0));
  const auto& c1 = tree.node(BallTree::child(node, 1));
  // step away from the children, staying on the plateau d <= r/2
  double dir = c1.center.coord > n.center.coord ? -1.0 : 1.0;
  Point x = Point::real(n.center.coord + dir * 0.4 * n.radius);
  ASSERT_GE(inst.space().distance(x, c0.center), c0.radius);
  ASSERT_GE(inst.space().distance(x, c1.center), c1.radius);
  EXPECT_NEAR(inst.mean(x), expected, 1e-15);
}

TEST(Lineage, MonteCarloAndDisjointness) {
  LineageInstance inst(interval(), {.depth = 6, .gamma = 0.25, .seed = 7, .biases = {0.6, 0.5, 0.4, 0.3, 0.2, 0.1}, .choice = {}});
  Rng rng(2);
  for (int i = 0; i < 3; ++i) {
    Point x = inst.probe(rng);
    auto mc = monte_carlo(inst, x, 100000, 100 + static_cast<std::uint64_t>(i));
    EXPECT_LE(std::abs(mc.mean - inst.mean(x)), 3 * mc.se + 1e-12);
  }
  const auto& tree = inst.tree();
  for (int i = 0; i < 500; ++i) {
    Point x = inst.probe(rng);
    std::vector<int> per_depth(7, 0);
    for (std::size_t j = 1; j < tree.nodes().size(); ++j)
      if (needle(tree.space(), tree.node(j).center, tree.node(j).radius, x) > 0.0) ++per_depth[static_cast<std::size_t>(tree.node(j).depth)];
    for (int c : per_depth) ASSERT_LE(c, 1);
  }
}

TEST(Lineage, ThresholdScan) {
  LineageInstance inst(interval(), {.depth = 4, .gamma = 0.25, .seed = 0, .biases = {}, .choice = {}});
  for (int i = 1; i <= 4; ++i) {
    double n_i = inst.n_threshold(i);
    double c = inst.tree().min_radius(i) / (8.0 * i);
    EXPECT_DOUBLE_EQ(inst.bias(i), 1.0 / std::sqrt(n_i));
    for (double m : {1.0001, 1.5, 4.0, 100.0}) EXPECT_LT(std::pow(n_i * m, 0.25), c * std::sqrt(n_i * m)) << i;
    EXPECT_GE(std::pow(n_i * 0.999, 0.25), c * std::sqrt(n_i * 0.999)) << i;
  }
}

TEST(Lineage, AcrossRoundCorrelationIsSmall) {
  LineageInstance inst(interval(), {.depth = 4, .gamma = 0.25, .seed = 3, .biases = {0.3, 0.3, 0.3, 0.3}, .choice = {}});
  Rng rng(4);
  Point x = inst.probe(rng);
  const std::size_t n = 100000;
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = inst.realize(key_of(77, t), x);
  double m = 0.0;
  for (double a : v) m += a;
  m /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    den += (v[t] - m) * (v[t] - m);
    if (t + 1 < n) num += (v[t] - m) * (v[t + 1] - m);
  }
  ASSERT_GT(den, 0.0);
  EXPECT_LT(std::abs(num / den), 0.02);
}

TEST(Logt, Examples) {
  std::vector<Point> seq{Point::real(0.5), Point::real(0.2), Point::real(0.05)};
  auto ens = make_logt_ensemble(interval(), seq, Point::real(0.0));
  ASSERT_EQ(ens.size(), 4u);
  EXPECT_EQ(ens[0]->mean(Point::real(0.0)), 0.5);
  for (int i = 1; i <= 3; ++i) {
    const auto& mi = *ens[static_cast<std::size_t>(i)];
    double r = mi.radius(i);
    Point xi = mi.center(i);
    EXPECT_NEAR(mi.mean(xi) - ens[0]->mean(xi), r / 4.0, 1e-15);
    Point edge = Point::real(xi.coord + r / 3.0);
    EXPECT_NEAR(mi.mean(edge), ens[0]->mean(edge), 1e-15);
  }
  std::vector<Point> bad{Point::real(0.5), Point::real(0.3)};
  EXPECT_THROW(make_logt_ensemble(interval(), bad, Point::real(0.0)), ValidationError);
}

TEST(Wedge, Examples) {
  auto h = std::make_shared<HedgehogSpace>(12);
  auto inst = make_instance(h, {{"kind", "wedge"}, {"centers", "tips"}, {"radius", 0.25}, {"t_schedule", {1, 2}},
                                {"sizes", {4, 6}}, {"seed", 5}});
  const auto& w = static_cast<const WedgeInstance&>(*inst);
  EXPECT_TRUE(w.guarantee_breaking());
  EXPECT_EQ(w.intervals(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    const Point& s = w.center(w.chosen(k));
    EXPECT_NEAR(w.mean(s), 0.5 + 0.25 - w.inner_radius(k), 1e-15);
  }
  EXPECT_EQ(w.mean(h->hub()), 0.5);
  for (std::uint64_t t = 0; t < 100; ++t) EXPECT_EQ(w.realize(key_of(1, t), h->hub()), 0.5);

  std::size_t ordinary = w.chosen(0) == 0 ? 1 : 0;
  auto mc = monte_carlo(w, w.center(ordinary), 100000, 21);
  EXPECT_EQ(w.mean(w.center(ordinary)), 0.5);
  EXPECT_LE(std::abs(mc.mean - 0.5), 3 * mc.se);
}

TEST(Wedge, Validation) {
  auto s = interval();
  nlohmann::json d{{"kind", "wedge"}, {"centers", {0.2, 0.3}}, {"radius", 0.1}, {"t_schedule", {1}}, {"sizes", {2}}};
  EXPECT_THROW(make_instance(s, d), ValidationError);
  d["centers"] = {0.2, 0.5};
  EXPECT_NO_THROW(make_instance(s, d));
  d["t_schedule"] = {2, 1};
  d["sizes"] = {1, 1};
  EXPECT_THROW(make_instance(s, d), ValidationError);
}

TEST(Bump, DepthOnePlateau) {
  BumpInstance inst(interval(), {.b = 1.0, .depth = 1, .seed = 3, .count_cap = 8});
  const BumpInstance::Node* q = nullptr;
  for (const auto& n : inst.nodes())
    if (n.depth == 1 && n.in_q) q = &n;
  ASSERT_NE(q, nullptr);
  EXPECT_NEAR(inst.mean(q->center), 0.5 + inst.level_radius(1) / 6.0, 1e-15);
  for (const auto& n : inst.nodes()) {
    if (n.depth == 1 && !n.in_q) {
      EXPECT_EQ(inst.mean(n.center), 0.5);
    }
  }
}

TEST(Bump, RangeAndRadii) {
  BumpInstance inst(interval(), {.b = 1.0, .depth = 3, .seed = 9, .count_cap = 8});
  for (int i = 1; i <= 3; ++i) EXPECT_LT(inst.level_radius(i), inst.level_radius(i - 1) / 4.0);
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    Point x = inst.probe(rng);
    double v = inst.realize(key_of(3, static_cast<std::uint64_t>(i)), x);
    ASSERT_GE(v, 0.5 - 1.0 / 3.0);
    ASSERT_LE(v, 0.5 + 1.0 / 3.0);
  }
  Point far = Point::real(0.99);
  EXPECT_EQ(inst.mean(far), 0.5);
}

TEST(InstanceJson, Errors) {
  EXPECT_THROW(make_instance(interval(), {{"kind", "peak"}, {"peek", 0.3}}), ValidationError);
  EXPECT_THROW(make_instance(interval(), {{"kind", "nope"}}), ValidationError);
  EXPECT_THROW(make_instance(std::make_shared<CountableSpace>(CountableSpace::sequence(10)), {{"kind", "bump"}}), CapabilityError);
  auto p = make_instance(interval(), {{"kind", "peak"}, {"peak", 0.3}});
  EXPECT_EQ(p->describe()["kind"], "peak");
}
