#include <cmath>
#include <limits>

#include "liplab/errors.hpp"
#include "liplab/verify.hpp"

namespace liplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// p ln(p/q) with the 0 and infinity conventions.
double term(double p, double q) {
  if (p == 0.0) return 0.0;
  if (q == 0.0) return kInf;
  return p * std::log(p / q);
}

std::vector<double> marginal(const ProductMeasure& m, std::size_t prefix) {
  std::size_t block = 1;
  for (std::size_t i = prefix; i < m.coords; ++i) block *= m.atoms;
  std::vector<double> out(m.p.size() / block, 0.0);
  for (std::size_t w = 0; w < m.p.size(); ++w) out[w / block] += m.p[w];
  return out;
}

}  // namespace

void FiniteMeasure::validate() const {
  if (p.empty()) throw ValidationError("measure needs at least one atom");
  if (!labels.empty() && labels.size() != p.size()) throw ValidationError("measure labels must match atoms");
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError("measure probabilities must be nonnegative");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ValidationError("measure probabilities must sum to 1 (got " + std::to_string(s) + ")");
}

double kl_divergence(const FiniteMeasure& p, const FiniteMeasure& q) {
  p.validate();
  q.validate();
  if (p.p.size() != q.p.size()) throw ValidationError("KL needs measures on the same atoms");
  if (!p.labels.empty() && !q.labels.empty() && p.labels != q.labels) throw ValidationError("KL needs matching atom labels");
  double s = 0.0;
  for (std::size_t i = 0; i < p.p.size(); ++i) s += term(p.p[i], q.p[i]);
  return std::max(s, 0.0);
}

double kl_bernoulli(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) throw ValidationError("Bernoulli parameters must lie in [0,1]");
  return std::max(term(a, b) + term(1.0 - a, 1.0 - b), 0.0);
}

ChainCheck kl_chain_check(const ProductMeasure& p, const ProductMeasure& q, std::size_t cap) {
  if (p.atoms != q.atoms || p.coords != q.coords) throw ValidationError("chain check needs measures on the same product space");
  if (p.atoms < 1 || p.coords < 1) throw ValidationError("chain check needs atoms, coords >= 1");
  std::size_t size = 1;
  for (std::size_t i = 0; i < p.coords; ++i) {
    size *= p.atoms;
    if (size > cap) throw ValidationError("product space exceeds the enumeration cap of " + std::to_string(cap));
  }
  if (p.p.size() != size || q.p.size() != size) throw ValidationError("product measure has the wrong number of atoms");
  FiniteMeasure{p.p, {}}.validate();
  FiniteMeasure{q.p, {}}.validate();

  ChainCheck c;
  for (std::size_t w = 0; w < size; ++w) c.lhs += term(p.p[w], q.p[w]);
  std::vector<double> pp{1.0}, qq{1.0};
  for (std::size_t i = 1; i <= p.coords; ++i) {
    auto pi = marginal(p, i), qi = marginal(q, i);
    for (std::size_t w = 0; w < pi.size(); ++w) {
      if (pi[w] == 0.0) continue;
      double parent_p = pp[w / p.atoms], parent_q = qq[w / p.atoms];
      if (qi[w] == 0.0) {
        c.rhs = kInf;
        continue;
      }
      c.rhs += pi[w] * std::log((pi[w] / parent_p) / (qi[w] / parent_q));
    }
    pp = std::move(pi);
    qq = std::move(qi);
  }
  c.residual = (std::isinf(c.lhs) && std::isinf(c.rhs)) ? 0.0 : std::abs(c.lhs - c.rhs);
  return c;
}

nlohmann::json LemmaReport::to_json() const {
  return {{"lemma", lemma}, {"cases", cases}, {"violations", violations}, {"skipped", skipped},
          {"min_margin", min_margin}, {"worst", worst}, {"pass", violations == 0}};
}

std::vector<LemmaReport> kl_bounds_report(int side) {
  if (side < 1) throw ValidationError("grid side must be >= 1");
  const auto n = static_cast<std::size_t>(side);
  auto grid = [n](std::size_t i) { return (static_cast<double>(i) + 0.5) / static_cast<double>(n); };
  auto note = [](LemmaReport& r, double lhs, double rhs, nlohmann::json at) {
    double m = rhs - lhs;
    if (r.cases == 0 || m < r.min_margin) {
      r.min_margin = m;
      r.worst = std::move(at);
      r.worst["lhs"] = lhs;
      r.worst["rhs"] = rhs;
    }
    ++r.cases;
    if (!(lhs < rhs)) ++r.violations;
  };

  LemmaReport bern;
  bern.lemma = "bernoulli_kl";
  const std::size_t ny = n * n, ne = n;
  for (std::size_t i = 0; i < ny; ++i) {
    double y = (static_cast<double>(i) + 0.5) / static_cast<double>(ny);
    for (std::size_t j = 0; j < ne; ++j) {
      double e = y * grid(j);
      note(bern, kl_bernoulli(y - e, y), e * e / (y * (1.0 - y)), {{"y", y}, {"eps", e}});
    }
  }

  // Three atoms: p = (a, (1-a)/2, (1-a)/2), q = (b, (1-b)c, (1-b)(1-c)), E = atom 0.
  LemmaReport dist;
  dist.lemma = "distinguishing";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double a = grid(i), b = grid(j), c = grid(k);
        FiniteMeasure p{{a, (1 - a) / 2, 1 - a - (1 - a) / 2}, {}};
        FiniteMeasure q{{b, (1 - b) * c, 1 - b - (1 - b) * c}, {}};
        double kappa = kl_divergence(p, q);
        note(dist, a * std::exp(-(kappa + 1.0 / M_E) / a), b, {{"pE", a}, {"qE", b}, {"c", c}, {"kl", kappa}});
      }

  // p as above with a split s; q moves mass m = 0.9 delta min(p0, p1) from atom 0 to 1.
  LemmaReport pinsker;
  pinsker.lemma = "reverse_pinsker";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double a = grid(i), s = grid(j), delta = 0.5 * (static_cast<double>(k) + 1.0) / static_cast<double>(n);
        std::vector<double> pv{a, (1 - a) * s, (1 - a) * (1 - s)};
        double m = 0.9 * delta * std::min(pv[0], pv[1]);
        FiniteMeasure p{pv, {}};
        FiniteMeasure q{{pv[0] - m, pv[1] + m, pv[2]}, {}};
        note(pinsker, kl_divergence(p, q), delta * delta, {{"a", a}, {"split", s}, {"delta", delta}});
      }
  return {bern, dist, pinsker};
}

}  // namespace liplab
