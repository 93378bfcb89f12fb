#include <algorithm>
#include <cmath>
#include <limits>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

IntervalSpace::IntervalSpace(double resolution) : resolution_(resolution) {
  if (!(resolution > 0.0 && resolution < 0.5)) throw ValidationError("interval resolution must be in (0, 1/2)");
}

double IntervalSpace::distance(const Point& a, const Point& b) const { return std::abs(a.coord - b.coord); }

bool IntervalSpace::contains(const Point& p) const {
  return p.index == 0 && p.path.empty() && p.coord >= 0.0 && p.coord <= 1.0;
}

Capabilities IntervalSpace::capabilities() const {
  Capabilities c;
  c.perfect_subspace = true;
  c.packable = true;
  return c;
}

Covering IntervalSpace::cover(std::size_t k) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  Covering c;
  c.delta = 1.0 / (2.0 * static_cast<double>(k));
  c.points.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) c.points.push_back(Point::real(static_cast<double>(2 * i - 1) * c.delta));
  return c;
}

CoveringCount IntervalSpace::covering_number(double delta) const {
  if (!(delta > 0.0)) throw ValidationError("the interval has no finite covering at delta <= 0");
  CoveringCount out;
  if (delta >= 1.0) {
    out.count = 1;
    return out;
  }
  double n = std::ceil(1.0 / delta);
  while (n > 1.0 && (n - 1.0) * delta >= 1.0) n -= 1.0;
  out.count = static_cast<std::uint64_t>(n);
  out.log_count = std::log(n);
  return out;
}

nlohmann::json IntervalSpace::describe() const { return {{"kind", "interval"}, {"resolution", resolution_}}; }

Point IntervalSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_number()) throw ValidationError("interval point must be a number, got " + j.dump());
  Point p = Point::real(j.get<double>());
  require(p);
  return p;
}

bool IntervalSpace::in_closure(const Point& p, const Ball& b) const {
  return distance(p, b.center) <= b.radius;
}

namespace {

std::pair<double, double> target_range(const PointSet& t) {
  if (t.kind == PointSet::Kind::ball)
    return {std::max(0.0, t.ball.center.coord - t.ball.radius), std::min(1.0, t.ball.center.coord + t.ball.radius)};
  return {0.0, 1.0};
}

}  // namespace

std::optional<Point> IntervalSpace::least_uncovered(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_uncovered(target, balls);
  auto [lo, hi] = target_range(target);
  double x = lo;
  // each pass moves x past at least one ball, so balls.size()+1 passes suffice
  for (std::size_t pass = 0; pass <= balls.size(); ++pass) {
    if (x > hi) return std::nullopt;
    double next = x;
    bool covered = false;
    for (const auto& b : balls) {
      if (!in_ball(Point::real(x), b)) continue;
      covered = true;
      double end = b.center.coord + b.radius;
      // an open ball leaves its right endpoint uncovered; past a closed ball the
      // least uncovered point is one resolution step beyond the endpoint
      double candidate = b.closed ? end + resolution_ : end;
      next = std::max(next, candidate);
    }
    if (!covered) return Point::real(x);
    x = next;
  }
  return x <= hi ? std::optional<Point>(Point::real(x)) : std::nullopt;
}

std::optional<Point> IntervalSpace::least_in_closure(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_in_closure(target, balls);
  auto [lo, hi] = target_range(target);
  std::optional<double> best;
  for (const auto& b : balls) {
    double a = std::max(lo, b.center.coord - b.radius);
    double e = std::min(hi, b.center.coord + b.radius);
    if (a <= e && (!best || a < *best)) best = a;
  }
  if (!best) return std::nullopt;
  return Point::real(*best);
}

Point IntervalSpace::perfect_neighbor(const Point& y, double r) const {
  require(y);
  double d = std::min(0.24 * r, 0.5);
  if (d < resolution_) throw ResolutionError("interval radius " + std::to_string(r) + " is below the representation resolution");
  double up = y.coord + d;
  return Point::real(up <= 1.0 ? up : y.coord - d);
}

Packing IntervalSpace::pack(const Point& center, double R, std::size_t n, double r_max) const {
  require(center);
  if (n == 0) throw ValidationError("packing needs n >= 1");
  double a = std::max(0.0, center.coord - R);
  double b = std::min(1.0, center.coord + R);
  double h = (b - a) / static_cast<double>(n);
  Packing out;
  out.radius = std::min(r_max, 0.45 * h);
  if (out.radius < resolution_) throw ResolutionError("packing radius falls below the interval resolution");
  for (std::size_t j = 0; j < n; ++j) out.centers.push_back(Point::real(a + (static_cast<double>(j) + 0.5) * h));
  return out;
}

}  // namespace liplab
