#pragma once

#include <cstdint>
#include <vector>

namespace liplab {

// A point is only meaningful inside the space that produced it. Which fields
// are used depends on the space kind:
//   interval, dyadic    coord (dyadic also index = numerator)
//   finite              index
//   countable           index into the value table, coord = value
//   uniform_tree        path (one digit per level)
//   hedgehog            index = spine, coord = distance from the hub
struct Point {
  std::int64_t index = 0;
  double coord = 0.0;
  std::vector<std::uint64_t> path;

  bool operator==(const Point&) const = default;

  static Point real(double x) { return Point{0, x, {}}; }
  static Point at(std::int64_t i) { return Point{i, 0.0, {}}; }
  static Point leaf(std::vector<std::uint64_t> digits) { return Point{0, 0.0, std::move(digits)}; }
};

// Stable 64-bit key of the representation; used to key per-point noise.
std::uint64_t point_key(const Point& p);

struct PointHash {
  std::size_t operator()(const Point& p) const { return static_cast<std::size_t>(point_key(p)); }
};

// Open balls need radius > 0; closed balls allow radius 0 (a singleton).
struct Ball {
  Point center;
  double radius = 0.0;
  bool closed = false;

  static Ball open(Point c, double r);
  static Ball closed_ball(Point c, double r);
};

// Closed subsets used as decomposition levels and oracle targets.
struct PointSet {
  enum class Kind { all, empty, points, ball };
  Kind kind = Kind::all;
  std::vector<Point> points;
  Ball ball;  // closed ball when kind == ball

  static PointSet whole() { return PointSet{}; }
  static PointSet none() { return PointSet{Kind::empty, {}, {}}; }
  static PointSet of(std::vector<Point> pts) { return PointSet{Kind::points, std::move(pts), {}}; }
  static PointSet closed_ball(Point c, double r);
};

}  // namespace liplab
