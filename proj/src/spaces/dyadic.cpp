#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

DyadicSpace::DyadicSpace(int level) : level_(level) {
  if (level < 0 || level > 52) throw ValidationError("dyadic level must be in [0, 52]");
  top_ = std::int64_t{1} << level;
  step_ = std::ldexp(1.0, -level);
}

Point DyadicSpace::at(std::int64_t k) const {
  if (k < 0 || k > top_) throw ValidationError("dyadic index out of range");
  return Point{k, static_cast<double>(k) * step_, {}};
}

Point DyadicSpace::round(double x, int bits) const {
  int b = std::clamp(bits, 0, level_);
  double scale = std::ldexp(1.0, b);
  double k = std::ceil(std::clamp(x, 0.0, 1.0) * scale - 0.5);  // ties round down
  auto idx = static_cast<std::int64_t>(k) << (level_ - b);
  return at(idx);
}

double DyadicSpace::distance(const Point& a, const Point& b) const { return std::abs(a.coord - b.coord); }

bool DyadicSpace::contains(const Point& p) const {
  return p.path.empty() && p.index >= 0 && p.index <= top_ && p.coord == static_cast<double>(p.index) * step_;
}

Capabilities DyadicSpace::capabilities() const {
  Capabilities c;
  c.finite = true;
  c.perfect_subspace = true;
  return c;
}

Covering DyadicSpace::cover(std::size_t k) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  Covering c;
  if (static_cast<std::int64_t>(k) > top_) {
    for (std::int64_t i = 0; i <= top_; ++i) c.points.push_back(at(i));
    c.delta = 0.0;
    return c;
  }
  double half = 1.0 / (2.0 * static_cast<double>(k));
  for (std::size_t i = 1; i <= k; ++i) {
    Point p = round(static_cast<double>(2 * i - 1) * half, level_);
    if (c.points.empty() || !(c.points.back() == p)) c.points.push_back(p);
  }
  // snapping moves each centre by at most half a grid step
  c.delta = std::min(1.0, half + step_ / 2);
  return c;
}

CoveringCount DyadicSpace::covering_number(double delta) const {
  if (delta < 0.0) throw ValidationError("delta must be nonnegative");
  auto per_set = static_cast<std::int64_t>(std::floor(delta / step_ + 1e-9)) + 1;
  std::int64_t total = top_ + 1;
  CoveringCount out;
  std::int64_t n = (total + per_set - 1) / per_set;
  out.count = static_cast<std::uint64_t>(n);
  out.log_count = std::log(static_cast<double>(n));
  return out;
}

Point DyadicSpace::sample(Rng& rng) const { return at(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(top_ + 1)))); }

nlohmann::json DyadicSpace::describe() const { return {{"kind", "dyadic"}, {"level", level_}}; }

Point DyadicSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_number()) throw ValidationError("dyadic point must be a number, got " + j.dump());
  double x = j.get<double>();
  double k = x / step_;
  if (x < 0.0 || x > 1.0 || k != std::floor(k)) throw ValidationError("value " + j.dump() + " is not a dyadic grid point");
  return at(static_cast<std::int64_t>(k));
}

std::optional<std::vector<Point>> DyadicSpace::enumerate() const {
  if (level_ > 24) return std::nullopt;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(top_ + 1));
  for (std::int64_t i = 0; i <= top_; ++i) out.push_back(at(i));
  return out;
}

std::pair<std::int64_t, std::int64_t> DyadicSpace::index_range(const PointSet& target) const {
  if (target.kind != PointSet::Kind::ball) return {0, top_};
  double lo = target.ball.center.coord - target.ball.radius;
  double hi = target.ball.center.coord + target.ball.radius;
  auto a = static_cast<std::int64_t>(std::max(0.0, std::ceil(lo / step_) - 1));
  auto b = static_cast<std::int64_t>(std::min(static_cast<double>(top_), std::floor(hi / step_) + 1));
  while (a <= b && !in_set(at(a), target)) ++a;
  while (b >= a && !in_set(at(b), target)) --b;
  return {a, b};
}

std::optional<Point> DyadicSpace::least_uncovered(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_uncovered(target, balls);
  auto [lo, hi] = index_range(target);
  std::int64_t x = lo;
  for (std::size_t pass = 0; pass <= balls.size(); ++pass) {
    if (x > hi) return std::nullopt;
    std::int64_t next = x;
    bool covered = false;
    for (const auto& b : balls) {
      if (!in_ball(at(x), b)) continue;
      covered = true;
      auto k = static_cast<std::int64_t>(std::floor((b.center.coord + b.radius) / step_)) - 1;
      k = std::max(k, x);
      while (k <= top_ && in_ball(at(k), b)) ++k;
      next = std::max(next, k);
    }
    if (!covered) return at(x);
    x = next;
  }
  return x <= hi ? std::optional<Point>(at(x)) : std::nullopt;
}

std::optional<Point> DyadicSpace::least_in_closure(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_in_closure(target, balls);
  auto [lo, hi] = index_range(target);
  std::optional<std::int64_t> best;
  for (const auto& b : balls) {
    auto k = static_cast<std::int64_t>(std::ceil((b.center.coord - b.radius) / step_)) - 1;
    k = std::max(k, lo);
    while (k <= hi && !in_ball(at(k), b)) {
      if (static_cast<double>(k) * step_ > b.center.coord + b.radius) break;
      ++k;
    }
    if (k <= hi && in_ball(at(k), b) && (!best || k < *best)) best = k;
  }
  if (!best) return std::nullopt;
  return at(*best);
}

Point DyadicSpace::perfect_neighbor(const Point& y, double r) const {
  require(y);
  auto m = static_cast<std::int64_t>(std::floor(0.24 * r / step_));
  m = std::min(m, top_ / 2);
  if (m < 1) throw ResolutionError("radius " + std::to_string(r) + " is below the dyadic grid step");
  return at(y.index + m <= top_ ? y.index + m : y.index - m);
}

}  // namespace liplab
