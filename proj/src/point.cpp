#include "liplab/point.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "liplab/errors.hpp"
#include "liplab/rng.hpp"

namespace liplab {

std::uint64_t point_key(const Point& p) {
  std::uint64_t h = combine_keys(static_cast<std::uint64_t>(p.index), std::bit_cast<std::uint64_t>(p.coord));
  for (auto d : p.path) h = combine_keys(h, d);
  return combine_keys(h, p.path.size());
}

Ball Ball::open(Point c, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("open ball radius must be positive, got " + std::to_string(r));
  return Ball{std::move(c), r, false};
}

Ball Ball::closed_ball(Point c, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("closed ball radius must be nonnegative, got " + std::to_string(r));
  return Ball{std::move(c), r, true};
}

PointSet PointSet::closed_ball(Point c, double r) {
  PointSet s;
  s.kind = Kind::ball;
  s.ball = Ball::closed_ball(std::move(c), r);
  return s;
}

}  // namespace liplab
