#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "liplab/errors.hpp"
#include "liplab/harness.hpp"

namespace liplab {

std::vector<std::uint64_t> checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 1; t <= horizon && t != 0; t <<= 1) out.push_back(t);
  return out;
}

namespace {

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

nlohmann::json Aggregate::to_json() const {
  return {{"t", t}, {"mean", mean}, {"stderr", stderr_}, {"min", min}, {"max", max},
          {"q10", q10}, {"q50", q50}, {"q90", q90}, {"replicates", replicates}};
}

Aggregate aggregate(const std::vector<RegretTrace>& traces) {
  Aggregate a;
  a.replicates = traces.size();
  if (traces.empty()) return a;
  std::uint64_t h = traces.front().horizon();
  for (const auto& tr : traces)
    if (tr.horizon() != h) throw ValidationError("aggregate needs traces of one horizon");
  a.t = checkpoints(h);
  const double n = static_cast<double>(traces.size());
  for (auto t : a.t) {
    std::vector<double> v;
    for (const auto& tr : traces) v.push_back(tr.regret_at(t));
    double m = 0.0;
    for (double x : v) m += x;
    m /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    a.mean.push_back(m);
    a.stderr_.push_back(v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0);
    a.min.push_back(*std::min_element(v.begin(), v.end()));
    a.max.push_back(*std::max_element(v.begin(), v.end()));
    a.q10.push_back(quantile(v, 0.1));
    a.q50.push_back(quantile(v, 0.5));
    a.q90.push_back(quantile(v, 0.9));
  }
  return a;
}

nlohmann::json ExponentFit::to_json() const {
  return {{"slope", slope}, {"intercept", intercept}, {"t_lo", t_lo}, {"t_hi", t_hi}, {"residual", residual},
          {"points", points}, {"degenerate", degenerate}, {"note", note}};
}

ExponentFit fit_exponent(const std::vector<double>& t, const std::vector<double>& r, double t_lo, double t_hi) {
  if (t.size() != r.size()) throw ValidationError("fit needs equally long t and R arrays");
  ExponentFit f;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(r[i] > 0.0) || !(t[i] > 0.0)) {
      f.degenerate = true;
      f.note = "nonpositive regret at t = " + std::to_string(t[i]);
      return f;
    }
    x.push_back(std::log(t[i]));
    y.push_back(std::log(r[i]));
  }
  f.points = x.size();
  if (x.size() < 3) {
    f.degenerate = true;
    f.note = "fewer than 3 points in the window";
    return f;
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    rss += e * e;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

ExponentFit fit_exponent(const RegretTrace& trace, double t_lo, double t_hi) {
  std::vector<double> t, r;
  for (auto c : checkpoints(trace.horizon())) {
    t.push_back(static_cast<double>(c));
    r.push_back(trace.regret_at(c));
  }
  return fit_exponent(t, r, t_lo, t_hi);
}

ExponentFit fit_tail(const RegretTrace& trace, std::size_t count) {
  auto cps = checkpoints(trace.horizon());
  if (count > cps.size()) count = cps.size();
  double lo = static_cast<double>(cps[cps.size() - count]);
  return fit_exponent(trace, lo, static_cast<double>(cps.back()));
}

std::string trace_digest(const RegretTrace& trace) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto eat = [&h](const std::vector<double>& v) {
    for (double d : v) {
      auto bits = std::bit_cast<std::uint64_t>(d);
      for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    }
  };
  eat(trace.expected_reward);
  eat(trace.reward);
  eat(trace.cum_regret);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace liplab
