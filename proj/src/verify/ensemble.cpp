#include <algorithm>
#include <cmath>
#include <limits>

#include "liplab/errors.hpp"
#include "liplab/verify.hpp"

namespace liplab {

nlohmann::json EnsembleReport::to_json() const {
  return {{"structural", structural}, {"property1", property1}, {"property2", property2}, {"min_ratio", min_ratio},
          {"max_ratio", max_ratio}, {"margin1", margin1}, {"margin2", margin2}, {"kl", kl},
          {"message", message}, {"pass", pass()}};
}

EnsembleReport ensemble_check(const EnsembleSpec& s) {
  EnsembleReport r;
  auto fail = [&r](std::string m) {
    r.structural = false;
    r.message = std::move(m);
    return r;
  };
  if (!(s.delta > 0.0 && s.delta < 0.5)) throw ValidationError("ensemble delta must be in (0, 1/2)");
  if (!(s.eps >= 0.0 && s.eps < 0.5)) throw ValidationError("ensemble eps must be in [0, 1/2)");
  if (s.horizon < 1) throw ValidationError("ensemble horizon must be >= 1");
  if (s.measures.size() < 2) return fail("need P_0 and at least one P_i");
  const std::size_t k = s.measures.size() - 1;
  if (s.subsets.size() != k || s.means.size() != k) return fail("need one subset and one mean vector per P_i");
  for (const auto& m : s.measures) {
    m.validate();
    if (m.p.size() != s.measures[0].p.size()) return fail("measures live on different atom sets");
  }
  const std::size_t strategies = s.means[0].size();
  std::vector<int> owner(strategies, -1);
  for (std::size_t i = 0; i < k; ++i) {
    if (s.means[i].size() != strategies) return fail("mean vectors differ in length");
    if (s.subsets[i].empty()) return fail("subset S_" + std::to_string(i + 1) + " is empty");
    for (auto x : s.subsets[i]) {
      if (x >= strategies) return fail("subset entry out of range");
      if (owner[x] >= 0) return fail("subsets S_" + std::to_string(owner[x] + 1) + " and S_" + std::to_string(i + 1) + " overlap");
      owner[x] = static_cast<int>(i);
    }
  }

  // On a finite atom space every event ratio is a mediant of atom ratios, so
  // the extremes over events are the extremes over atoms.
  const auto& p0 = s.measures[0].p;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& pi = s.measures[i].p;
    for (std::size_t a = 0; a < p0.size(); ++a) {
      if (p0[a] == 0.0 && pi[a] == 0.0) continue;
      double ratio = pi[a] == 0.0 ? std::numeric_limits<double>::infinity() : p0[a] / pi[a];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    r.kl.push_back(static_cast<double>(s.horizon) * kl_divergence(s.measures[i], s.measures[0]));
  }
  const double h = static_cast<double>(s.horizon);
  r.min_ratio = std::pow(lo, h);
  r.max_ratio = std::pow(hi, h);
  r.margin1 = std::min(r.min_ratio - (1.0 - s.delta), (1.0 + s.delta) - r.max_ratio);
  r.property1 = r.margin1 > 0.0;

  r.margin2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    double in = -std::numeric_limits<double>::infinity(), out = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < strategies; ++x) {
      if (owner[x] == static_cast<int>(i)) in = std::max(in, s.means[i][x]);
      else out = std::max(out, s.means[i][x]);
    }
    r.margin2 = std::min(r.margin2, (in - out) - s.eps);
  }
  r.property2 = r.margin2 >= 0.0;
  return r;
}

EnsembleSpec sibling_ensemble(double bias, double r, double delta) {
  if (!(bias > 0.0 && bias < 1.0)) throw ValidationError("bias must be in (0, 1)");
  // atoms: sign pairs (-,-), (-,+), (+,-), (+,+) for the two siblings
  auto law = [](double b1, double b2) {
    double u = 0.5 * (1 + b1), v = 0.5 * (1 + b2);
    return FiniteMeasure{{(1 - u) * (1 - v), (1 - u) * v, u * (1 - v), u * v}, {"--", "-+", "+-", "++"}};
  };
  EnsembleSpec s;
  s.measures = {law(0, 0), law(bias, 0), law(0, bias)};
  s.subsets = {{0}, {1}};
  double gain = bias * r / 2.0;
  s.means = {{0.5 + gain, 0.5, 0.5}, {0.5, 0.5 + gain, 0.5}};
  s.eps = gain;
  s.delta = delta;
  return s;
}

std::uint64_t lb_time_threshold(double eps, double delta, std::size_t k) {
  if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("eps must be in (0, 1/2)");
  if (!(delta > 0.0 && delta <= 0.5)) throw ValidationError("delta must be in (0, 1/2]");
  if (k < 2) throw ValidationError("k must be >= 2");
  double bound = std::log(17.0 * static_cast<double>(k)) / (2.0 * delta * delta);
  double f = std::floor(bound);
  if (f == bound) f -= 1.0;
  return static_cast<std::uint64_t>(f);
}

}  // namespace liplab

namespace liplab {

nlohmann::json LogtKlReport::to_json() const {
  return {{"traces", traces}, {"mean_lhs", mean_lhs}, {"mean_rhs", mean_rhs}, {"mean_hits", mean_hits},
          {"pathwise_violations", pathwise_violations}, {"min_margin", min_margin}, {"pass", pass()}};
}

LogtKlReport logt_kl_check(const LogtInstance& mu0, const LogtInstance& mui, const std::vector<std::vector<Point>>& bets) {
  if (mu0.index() != 0) throw ValidationError("logt_kl_check needs the baseline (index 0) as the first instance");
  if (bets.empty()) throw ValidationError("logt_kl_check needs at least one trace with recorded bets");
  LogtKlReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const int i = mui.index();
  const double r = i > 0 ? mui.radius(i) : 0.0;
  for (const auto& trace : bets) {
    double lhs = 0.0;
    std::size_t hits = 0;
    for (const auto& x : trace) {
      lhs += kl_bernoulli(mu0.mean(x), mui.mean(x));
      if (i > 0 && mui.in_bump(i, x)) ++hits;
    }
    double rhs = r * r / 3.0 * static_cast<double>(hits);
    bool ok = hits == 0 ? lhs == 0.0 : lhs < rhs;
    if (!ok) ++rep.pathwise_violations;
    rep.min_margin = std::min(rep.min_margin, rhs - lhs);
    rep.mean_lhs += lhs;
    rep.mean_rhs += rhs;
    rep.mean_hits += static_cast<double>(hits);
    ++rep.traces;
  }
  const double n = static_cast<double>(rep.traces);
  rep.mean_lhs /= n;
  rep.mean_rhs /= n;
  rep.mean_hits /= n;
  return rep;
}

}  // namespace liplab
