#include "liplab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liplab/errors.hpp"

namespace liplab {

DimensionMode parse_dimension_mode(const std::string& s) {
  if (s == "cov") return DimensionMode::cov;
  if (s == "lcd") return DimensionMode::lcd;
  throw ValidationError("dimension mode must be 'cov' or 'lcd', got '" + s + "'");
}

std::vector<double> dyadic_grid(int lo, int hi) {
  if (lo > hi) throw ValidationError("grid exponents must satisfy lo <= hi");
  std::vector<double> g;
  for (int e = lo; e <= hi; ++e) g.push_back(std::ldexp(1.0, -e));
  return g;
}

nlohmann::json DimensionEstimate::to_json() const {
  return {{"value", value}, {"deltas", deltas}, {"log_counts", log_counts}, {"slopes", slopes},
          {"tail_start", tail_start}, {"exact", exact}, {"capped", capped}};
}

DimensionEstimate estimate_dimension(const MetricSpace& space, DimensionMode mode, std::vector<double> grid) {
  if (grid.size() < 3) throw ValidationError("dimension grid needs at least three scales");
  for (double d : grid)
    if (!(d > 0.0 && d < 1.0)) throw ValidationError("grid scales must lie in (0,1)");
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 3) throw ValidationError("dimension grid needs at least three distinct scales");

  DimensionEstimate est;
  est.deltas = grid;
  std::vector<double> y;
  for (double d : grid) {
    auto c = space.covering_number(d);
    est.exact = est.exact && c.exact;
    est.capped = est.capped || c.capped;
    est.log_counts.push_back(c.log_count);
    if (mode == DimensionMode::cov) {
      y.push_back(c.log_count);
    } else {
      y.push_back(c.log_count > 0.0 ? std::log(c.log_count) : -std::numeric_limits<double>::infinity());
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double dx = std::log(grid[i - 1] / grid[i]);
    double s;
    if (y[i] == y[i - 1]) s = 0.0;  // also covers both -inf (N = 1)
    else if (!std::isfinite(y[i - 1])) s = std::numeric_limits<double>::quiet_NaN();
    else s = (y[i] - y[i - 1]) / dx;
    est.slopes.push_back(s);
  }
  est.tail_start = (est.slopes.size() - 1) / 2;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = est.tail_start; i < est.slopes.size(); ++i)
    if (!std::isnan(est.slopes[i])) best = std::max(best, est.slopes[i]);
  est.value = std::isfinite(best) ? best : 0.0;
  return est;
}

}  // namespace liplab
