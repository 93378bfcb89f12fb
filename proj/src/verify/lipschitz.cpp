#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/verify.hpp"

namespace liplab {

nlohmann::json LipschitzCertificate::to_json() const {
  return {{"pairs", pairs}, {"rounds", rounds}, {"samples_checked", samples_checked}, {"max_violation", max_violation},
          {"max_mean_violation", max_mean_violation}, {"max_range_excess", max_range_excess},
          {"tolerance", tolerance}, {"worst", worst}, {"pass", pass()}};
}

namespace {

// Half the pairs are close: y within a random fraction of a structural scale of x.
Point partner(const MetricSpace& s, const PayoffInstance& inst, const Point& x, Rng& rng) {
  if (rng.bernoulli(0.5)) return inst.probe(rng);
  double r = std::ldexp(1.0, -static_cast<int>(rng.below(30))) * (0.5 + rng.uniform());
  try {
    return s.perfect_neighbor(x, r);
  } catch (const std::exception&) {
    return inst.probe(rng);
  }
}

double range_excess(double v) { return std::max({0.0, -v, v - 1.0}); }

}  // namespace

LipschitzCertificate lipschitz_certify(const PayoffInstance& inst, std::size_t pairs, std::size_t rounds, Rng& rng,
                                       double tolerance) {
  if (pairs < 1 || rounds < 1) throw ValidationError("certification needs pairs, rounds >= 1");
  const auto& s = inst.space();
  LipschitzCertificate c;
  c.pairs = pairs;
  c.rounds = rounds;
  c.tolerance = tolerance;
  c.samples_checked = inst.uniformly_lipschitz();
  std::vector<std::uint64_t> keys(rounds);
  for (auto& k : keys) k = rng();
  double worst = -INFINITY;
  for (std::size_t p = 0; p < pairs; ++p) {
    Point x = inst.probe(rng);
    Point y = partner(s, inst, x, rng);
    double d = s.distance(x, y);
    double mx = inst.mean(x), my = inst.mean(y);
    c.max_mean_violation = std::max(c.max_mean_violation, std::abs(mx - my) - d);
    c.max_range_excess = std::max({c.max_range_excess, range_excess(mx), range_excess(my)});
    for (auto key : keys) {
      double a = inst.realize(key, x), b = inst.realize(key, y);
      c.max_range_excess = std::max({c.max_range_excess, range_excess(a), range_excess(b)});
      if (!c.samples_checked) continue;
      double v = std::abs(a - b) - d;
      if (v > worst) {
        worst = v;
        c.worst = {{"x", s.point_to_json(x)}, {"y", s.point_to_json(y)}, {"d", d}, {"pi_x", a}, {"pi_y", b}};
      }
      c.max_violation = std::max(c.max_violation, v);
    }
  }
  return c;
}

}  // namespace liplab
