#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/point.hpp"
#include "liplab/rng.hpp"

namespace liplab {

enum class SpaceKind { interval, dyadic, finite, countable, uniform_tree, hedgehog };

std::string to_string(SpaceKind kind);

struct Capabilities {
  bool finite = false;            // enumerate() lists every point
  bool well_ordered = false;      // topological well-order available
  bool cb_ranked = false;         // finite Cantor-Bendixson rank, known symbolically
  bool perfect_subspace = false;  // perfect_neighbor() works
  bool packable = false;          // pack() works
};

struct Covering {
  std::vector<Point> points;
  double delta = 0.0;
};

// N_delta: least number of sets of diameter <= delta covering the space.
struct CoveringCount {
  double log_count = 0.0;               // natural log
  std::optional<std::uint64_t> count;   // when it fits
  bool exact = true;                    // false: an upper bound
  bool capped = false;                  // a branching cap truncated the structure
};

struct Packing {
  std::vector<Point> centers;
  double radius = 0.0;
};

class MetricSpace {
 public:
  virtual ~MetricSpace() = default;

  virtual SpaceKind kind() const = 0;
  virtual double distance(const Point& a, const Point& b) const = 0;
  virtual bool contains(const Point& p) const = 0;
  virtual double diameter() const = 0;
  virtual Capabilities capabilities() const = 0;

  // Covering oracle: k points such that every point is within delta of one.
  // delta is nonincreasing in k and 0 once k reaches the size of a finite space.
  virtual Covering cover(std::size_t k) const = 0;
  virtual CoveringCount covering_number(double delta) const = 0;

  virtual bool canonical_less(const Point& a, const Point& b) const = 0;
  virtual Point canonical_least() const = 0;
  virtual Point sample(Rng& rng) const = 0;

  virtual nlohmann::json describe() const = 0;
  virtual nlohmann::json point_to_json(const Point& p) const = 0;
  virtual Point point_from_json(const nlohmann::json& j) const = 0;

  virtual std::optional<std::vector<Point>> enumerate() const { return std::nullopt; }

  // Is p in the closure of b? Closed balls are their own closure.
  virtual bool in_closure(const Point& p, const Ball& b) const;

  // Canonically least point of target outside every ball; nullopt when covered.
  virtual std::optional<Point> least_uncovered(const PointSet& target, std::span<const Ball> balls) const;
  // Canonically least point of target inside the closure of the union of balls.
  virtual std::optional<Point> least_in_closure(const PointSet& target, std::span<const Ball> balls) const;

  virtual bool well_less(const Point& a, const Point& b) const;
  // Every point, ascending in the well-order.
  virtual const std::vector<Point>& well_ordered_points() const;

  virtual int cb_rank() const;
  virtual int point_rank(const Point& p) const;
  // Covering of the rank-`rank` points by k of them.
  virtual Covering rank_cover(int rank, std::size_t k) const;

  // Some y' != y with d(y, y') < r/4.
  virtual Point perfect_neighbor(const Point& y, double r) const;

  // n balls of one radius <= r_max, pairwise centre distance > 2*radius,
  // each contained in the closed ball around `center` of radius R.
  virtual Packing pack(const Point& center, double R, std::size_t n, double r_max) const;

  std::string name() const { return to_string(kind()); }
  void require(const Point& p) const;
  double checked_distance(const Point& a, const Point& b) const;
  bool in_ball(const Point& p, const Ball& b) const;
  bool in_set(const Point& p, const PointSet& s) const;
  void sort_canonical(std::vector<Point>& pts) const;

 protected:
  [[noreturn]] void unsupported(const std::string& what) const;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

// Well-order-maximal point in the closure of the union of balls; falls back
// to the well-order-least point (fallback = true) when the closure is empty.
struct OrderingResult {
  Point point;
  bool fallback = false;
};
OrderingResult ordering_oracle(const MetricSpace& space, std::span<const Ball> balls);

// Smallest covering-oracle output with delta <= target (k searched by doubling
// then bisection, up to k_cap points).
Covering cover_to_delta(const MetricSpace& space, double target, std::size_t k_cap = std::size_t{1} << 20);

// Max over all points of the distance to the nearest of `centers` (finite spaces).
double covering_radius(const MetricSpace& space, std::span<const Point> centers);

}  // namespace liplab
