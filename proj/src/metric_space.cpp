#include "liplab/metric_space.hpp"

#include <algorithm>
#include <limits>

#include "liplab/errors.hpp"

namespace liplab {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::interval: return "interval";
    case SpaceKind::dyadic: return "dyadic";
    case SpaceKind::finite: return "finite";
    case SpaceKind::countable: return "countable";
    case SpaceKind::uniform_tree: return "uniform_tree";
    case SpaceKind::hedgehog: return "hedgehog";
  }
  return "unknown";
}

void MetricSpace::unsupported(const std::string& what) const {
  throw CapabilityError(name() + " space does not support " + what);
}

void MetricSpace::require(const Point& p) const {
  if (!contains(p)) throw ValidationError("point " + point_to_json(p).dump() + " is not in the " + name() + " space");
}

double MetricSpace::checked_distance(const Point& a, const Point& b) const {
  require(a);
  require(b);
  return distance(a, b);
}

bool MetricSpace::in_ball(const Point& p, const Ball& b) const {
  double d = distance(p, b.center);
  return b.closed ? d <= b.radius : d < b.radius;
}

bool MetricSpace::in_set(const Point& p, const PointSet& s) const {
  switch (s.kind) {
    case PointSet::Kind::all: return true;
    case PointSet::Kind::empty: return false;
    case PointSet::Kind::points: return std::find(s.points.begin(), s.points.end(), p) != s.points.end();
    case PointSet::Kind::ball: return distance(p, s.ball.center) <= s.ball.radius;
  }
  return false;
}

void MetricSpace::sort_canonical(std::vector<Point>& pts) const {
  std::sort(pts.begin(), pts.end(), [this](const Point& a, const Point& b) { return canonical_less(a, b); });
}

bool MetricSpace::in_closure(const Point& p, const Ball& b) const { return in_ball(p, b); }

namespace {

std::vector<Point> target_points(const MetricSpace& space, const PointSet& target) {
  if (target.kind == PointSet::Kind::points) {
    auto pts = target.points;
    space.sort_canonical(pts);
    return pts;
  }
  if (target.kind == PointSet::Kind::empty) return {};
  auto all = space.enumerate();
  if (!all) throw CapabilityError(space.name() + " space cannot enumerate points for this oracle target");
  if (target.kind == PointSet::Kind::all) return *all;
  std::vector<Point> out;
  for (auto& p : *all)
    if (space.in_set(p, target)) out.push_back(p);
  return out;
}

}  // namespace

std::optional<Point> MetricSpace::least_uncovered(const PointSet& target, std::span<const Ball> balls) const {
  for (const auto& p : target_points(*this, target)) {
    bool covered = std::any_of(balls.begin(), balls.end(), [&](const Ball& b) { return in_ball(p, b); });
    if (!covered) return p;
  }
  return std::nullopt;
}

std::optional<Point> MetricSpace::least_in_closure(const PointSet& target, std::span<const Ball> balls) const {
  for (const auto& p : target_points(*this, target)) {
    bool hit = std::any_of(balls.begin(), balls.end(), [&](const Ball& b) { return in_closure(p, b); });
    if (hit) return p;
  }
  return std::nullopt;
}

bool MetricSpace::well_less(const Point&, const Point&) const { unsupported("a well-order"); }
const std::vector<Point>& MetricSpace::well_ordered_points() const { unsupported("a well-order"); }
int MetricSpace::cb_rank() const { unsupported("Cantor-Bendixson rank"); }
int MetricSpace::point_rank(const Point&) const { unsupported("Cantor-Bendixson rank"); }
Covering MetricSpace::rank_cover(int, std::size_t) const { unsupported("rank covering oracles"); }
Point MetricSpace::perfect_neighbor(const Point&, double) const { unsupported("a perfect subspace"); }
Packing MetricSpace::pack(const Point&, double, std::size_t, double) const { unsupported("ball packing"); }

OrderingResult ordering_oracle(const MetricSpace& space, std::span<const Ball> balls) {
  const auto& order = space.well_ordered_points();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (const auto& b : balls) {
      if (space.in_closure(*it, b)) return {*it, false};
    }
  }
  return {order.front(), true};
}

Covering cover_to_delta(const MetricSpace& space, double target, std::size_t k_cap) {
  if (!(target >= 0.0)) throw ValidationError("target delta must be nonnegative");
  std::size_t hi = 1;
  Covering c = space.cover(hi);
  if (c.delta <= target) return c;
  std::size_t lo = 1;
  while (true) {
    if (hi >= k_cap) throw ResolutionError("covering oracle needs more than " + std::to_string(k_cap) + " points for delta " + std::to_string(target));
    lo = hi;
    hi = std::min(hi * 2, k_cap);
    c = space.cover(hi);
    if (c.delta <= target) break;
  }
  // invariant: cover(lo).delta > target >= cover(hi).delta
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    Covering m = space.cover(mid);
    if (m.delta <= target) {
      hi = mid;
      c = std::move(m);
    } else {
      lo = mid;
    }
  }
  return c;
}

double covering_radius(const MetricSpace& space, std::span<const Point> centers) {
  auto all = space.enumerate();
  if (!all) throw CapabilityError(space.name() + " space cannot enumerate points");
  double worst = 0.0;
  for (const auto& p : *all) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) best = std::min(best, space.distance(p, c));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace liplab
