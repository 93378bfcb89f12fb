#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

FiniteSpace FiniteSpace::from_coords(std::vector<double> coords) {
  if (coords.empty()) throw ValidationError("finite space needs at least one point");
  auto sorted = coords;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("finite space coordinates must be distinct");
  for (double c : coords)
    if (!std::isfinite(c)) throw ValidationError("finite space coordinates must be finite");
  FiniteSpace s;
  s.n_ = coords.size();
  s.coords_ = std::move(coords);
  s.diameter_ = sorted.back() - sorted.front();
  s.finish();
  return s;
}

FiniteSpace FiniteSpace::from_matrix(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw ValidationError("finite space needs at least one point");
  FiniteSpace s;
  s.n_ = n;
  s.matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw ValidationError("distance matrix must be square");
    for (std::size_t j = 0; j < n; ++j) s.matrix_[i * n + j] = m[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s.matrix_[i * n + i] != 0.0) throw ValidationError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      double d = s.matrix_[i * n + j];
      if (!std::isfinite(d) || d < 0.0) throw ValidationError("distances must be finite and nonnegative");
      if (d != s.matrix_[j * n + i]) throw ValidationError("distance matrix must be symmetric");
      if (i != j && d == 0.0) throw ValidationError("distinct points must have positive distance");
      s.diameter_ = std::max(s.diameter_, d);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (s.matrix_[i * n + k] > s.matrix_[i * n + j] + s.matrix_[j * n + k] + 1e-12)
          throw ValidationError("distance matrix violates the triangle inequality at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
  s.finish();
  return s;
}

FiniteSpace FiniteSpace::uniform(std::size_t k, double d) {
  if (!(d > 0.0)) throw ValidationError("uniform distance must be positive");
  std::vector<std::vector<double>> m(k, std::vector<double>(k, d));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 0.0;
  return from_matrix(std::move(m));
}

double FiniteSpace::dist(std::size_t i, std::size_t j) const {
  if (!coords_.empty()) return std::abs(coords_[i] - coords_[j]);
  return matrix_[i * n_ + j];
}

void FiniteSpace::finish() {
  points_.clear();
  for (std::size_t i = 0; i < n_; ++i) points_.push_back(Point::at(static_cast<std::int64_t>(i)));
  // farthest-point traversal; prefixes give nested covers with nonincreasing radius
  std::vector<double> nearest(n_, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n_, false);
  std::size_t next = 0;
  for (std::size_t step = 0; step < n_; ++step) {
    chosen[next] = true;
    greedy_order_.push_back(next);
    double worst = 0.0;
    std::size_t arg = n_;
    for (std::size_t i = 0; i < n_; ++i) {
      nearest[i] = std::min(nearest[i], dist(i, next));
      if (!chosen[i] && nearest[i] > worst) {
        worst = nearest[i];
        arg = i;
      }
    }
    greedy_delta_.push_back(worst);
    if (arg == n_) break;
    next = arg;
  }
}

double FiniteSpace::distance(const Point& a, const Point& b) const {
  return dist(static_cast<std::size_t>(a.index), static_cast<std::size_t>(b.index));
}

bool FiniteSpace::contains(const Point& p) const {
  return p.path.empty() && p.coord == 0.0 && p.index >= 0 && static_cast<std::size_t>(p.index) < n_;
}

Capabilities FiniteSpace::capabilities() const {
  Capabilities c;
  c.finite = true;
  c.well_ordered = true;
  c.cb_ranked = true;
  return c;
}

Covering FiniteSpace::cover(std::size_t k) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  std::size_t m = std::min(k, greedy_order_.size());
  Covering c;
  for (std::size_t i = 0; i < m; ++i) c.points.push_back(points_[greedy_order_[i]]);
  c.delta = greedy_delta_[m - 1];
  return c;
}

CoveringCount FiniteSpace::covering_number(double delta) const {
  if (delta < 0.0) throw ValidationError("delta must be nonnegative");
  CoveringCount out;
  std::uint64_t n = 0;
  if (!coords_.empty()) {
    auto sorted = coords_;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
      ++n;
      double start = sorted[i];
      while (i < sorted.size() && sorted[i] - start <= delta) ++i;
    }
  } else {
    double min_pos = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) min_pos = std::min(min_pos, dist(i, j));
    if (delta < min_pos) {
      n = n_;
    } else if (delta >= diameter_) {
      n = 1;
    } else {
      // greedy grouping gives an upper bound only
      out.exact = false;
      std::vector<bool> used(n_, false);
      for (std::size_t i = 0; i < n_; ++i) {
        if (used[i]) continue;
        ++n;
        std::vector<std::size_t> group{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < n_; ++j) {
          if (used[j]) continue;
          bool ok = std::all_of(group.begin(), group.end(), [&](std::size_t g) { return dist(g, j) <= delta; });
          if (ok) {
            group.push_back(j);
            used[j] = true;
          }
        }
      }
    }
  }
  out.count = n;
  out.log_count = std::log(static_cast<double>(n));
  return out;
}

nlohmann::json FiniteSpace::describe() const {
  nlohmann::json j{{"kind", "finite"}};
  if (!coords_.empty()) {
    j["coords"] = coords_;
  } else {
    std::vector<std::vector<double>> m(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) m[i][k] = matrix_[i * n_ + k];
    j["matrix"] = m;
  }
  return j;
}

Point FiniteSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_number_integer()) throw ValidationError("finite-space point must be an integer index, got " + j.dump());
  Point p = Point::at(j.get<std::int64_t>());
  require(p);
  return p;
}

std::optional<std::vector<Point>> FiniteSpace::enumerate() const { return points_; }

int FiniteSpace::point_rank(const Point& p) const {
  require(p);
  return 0;
}

Covering FiniteSpace::rank_cover(int rank, std::size_t k) const {
  if (rank != 0) throw ValidationError("finite spaces only have rank 0");
  return cover(k);
}

}  // namespace liplab
