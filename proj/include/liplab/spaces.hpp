#pragma once

#include <cstdint>
#include <vector>

#include "liplab/metric_space.hpp"

namespace liplab {

// [0,1] with the absolute-value metric. `resolution` bounds how fine the
// constructions that shrink radii geometrically may go.
class IntervalSpace final : public MetricSpace {
 public:
  explicit IntervalSpace(double resolution = 0x1p-48);

  SpaceKind kind() const override { return SpaceKind::interval; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return 1.0; }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override { return a.coord < b.coord; }
  Point canonical_least() const override { return Point::real(0.0); }
  Point sample(Rng& rng) const override { return Point::real(rng.uniform()); }
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override { return p.coord; }
  Point point_from_json(const nlohmann::json& j) const override;
  bool in_closure(const Point& p, const Ball& b) const override;
  std::optional<Point> least_uncovered(const PointSet& target, std::span<const Ball> balls) const override;
  std::optional<Point> least_in_closure(const PointSet& target, std::span<const Ball> balls) const override;
  Point perfect_neighbor(const Point& y, double r) const override;
  Packing pack(const Point& center, double R, std::size_t n, double r_max) const override;

  double resolution() const { return resolution_; }

 private:
  double resolution_;
};

// Dyadic rationals k / 2^level in [0,1].
class DyadicSpace final : public MetricSpace {
 public:
  explicit DyadicSpace(int level);

  SpaceKind kind() const override { return SpaceKind::dyadic; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return 1.0; }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override { return a.index < b.index; }
  Point canonical_least() const override { return at(0); }
  Point sample(Rng& rng) const override;
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override { return p.coord; }
  Point point_from_json(const nlohmann::json& j) const override;
  std::optional<std::vector<Point>> enumerate() const override;
  std::optional<Point> least_uncovered(const PointSet& target, std::span<const Ball> balls) const override;
  std::optional<Point> least_in_closure(const PointSet& target, std::span<const Ball> balls) const override;
  Point perfect_neighbor(const Point& y, double r) const override;

  int level() const { return level_; }
  std::int64_t size() const { return top_ + 1; }
  Point at(std::int64_t k) const;
  // Nearest grid point of level min(bits, level()) to x (ties round down).
  Point round(double x, int bits) const;

 private:
  std::pair<std::int64_t, std::int64_t> index_range(const PointSet& target) const;

  int level_;
  std::int64_t top_;  // 2^level
  double step_;
};

// Finitely many points, given either as coordinates on a line or as a
// distance matrix (validated exhaustively).
class FiniteSpace final : public MetricSpace {
 public:
  static FiniteSpace from_coords(std::vector<double> coords);
  static FiniteSpace from_matrix(std::vector<std::vector<double>> matrix);
  // k points at mutual distance d.
  static FiniteSpace uniform(std::size_t k, double d = 1.0);

  SpaceKind kind() const override { return SpaceKind::finite; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return diameter_; }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override { return a.index < b.index; }
  Point canonical_least() const override { return Point::at(0); }
  Point sample(Rng& rng) const override { return Point::at(static_cast<std::int64_t>(rng.below(n_))); }
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override { return p.index; }
  Point point_from_json(const nlohmann::json& j) const override;
  std::optional<std::vector<Point>> enumerate() const override;
  bool well_less(const Point& a, const Point& b) const override { return a.index < b.index; }
  const std::vector<Point>& well_ordered_points() const override { return points_; }
  int cb_rank() const override { return 0; }
  int point_rank(const Point& p) const override;
  Covering rank_cover(int rank, std::size_t k) const override;

  std::size_t size() const { return n_; }
  bool on_line() const { return !coords_.empty(); }

 private:
  FiniteSpace() = default;
  void finish();
  double dist(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::vector<double> coords_;
  std::vector<double> matrix_;  // row-major n*n when not on a line
  double diameter_ = 0.0;
  std::vector<Point> points_;
  std::vector<std::size_t> greedy_order_;  // farthest-point traversal from index 0
  std::vector<double> greedy_delta_;       // covering radius of each prefix
};

// Countable compact subset of the real line with a symbolic Cantor-Bendixson
// rank per point. Built from accumulation clusters:
//   depth 0:  {anchor}
//   depth d:  {anchor} plus, for n = 1..terms, a depth d-1 cluster anchored at
//             anchor + scale/n with scale scale/(4 n^2).
// The depth-1 cluster at 0 with scale 1 is {0} u {1/n : n <= terms}.
class CountableSpace final : public MetricSpace {
 public:
  struct Cluster {
    double anchor = 0.0;
    double scale = 1.0;
    int depth = 1;
    int terms = 100;
  };

  explicit CountableSpace(std::vector<Cluster> clusters);
  static CountableSpace sequence(int terms) { return CountableSpace({Cluster{0.0, 1.0, 1, terms}}); }

  SpaceKind kind() const override { return SpaceKind::countable; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return values_.back() - values_.front(); }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override { return a.index < b.index; }
  Point canonical_least() const override { return at(0); }
  Point sample(Rng& rng) const override { return at(static_cast<std::int64_t>(rng.below(values_.size()))); }
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override { return p.coord; }
  Point point_from_json(const nlohmann::json& j) const override;
  std::optional<std::vector<Point>> enumerate() const override { return points_; }
  bool in_closure(const Point& p, const Ball& b) const override;
  bool well_less(const Point& a, const Point& b) const override;
  const std::vector<Point>& well_ordered_points() const override { return well_order_; }
  int cb_rank() const override { return max_rank_; }
  int point_rank(const Point& p) const override;
  Covering rank_cover(int rank, std::size_t k) const override;

  std::size_t size() const { return values_.size(); }
  Point at(std::int64_t i) const { return Point{i, values_.at(static_cast<std::size_t>(i)), {}}; }
  // Exact lookup of a value in the table.
  Point find(double value) const;
  // Points of rank >= level.
  std::vector<Point> limit_set(int level) const;

 private:
  std::vector<std::size_t> cover_order(int only_rank) const;
  Covering take(const std::vector<std::size_t>& order, std::size_t k, int only_rank) const;

  std::vector<Cluster> clusters_;
  std::vector<double> values_;
  std::vector<int> ranks_;
  int max_rank_ = 0;
  std::vector<Point> points_;
  std::vector<Point> well_order_;
  std::vector<std::size_t> full_order_;
};

// Leaves of a rooted tree truncated at `depth`; nodes at level i have
// branching[i] children. Distinct leaves are at distance eps^l where l is the
// level of their least common ancestor (root = level 0).
class UniformTreeSpace final : public MetricSpace {
 public:
  UniformTreeSpace(double eps, std::vector<std::uint64_t> branching);
  // Branching ceil(exp(eps^{-ib} (2^b - 1))) at level i, capped.
  static UniformTreeSpace with_lcd(double eps, double b, int depth, std::uint64_t cap = std::uint64_t{1} << 62);

  SpaceKind kind() const override { return SpaceKind::uniform_tree; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return diameter_; }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override { return a.path < b.path; }
  Point canonical_least() const override;
  Point sample(Rng& rng) const override;
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override { return p.path; }
  Point point_from_json(const nlohmann::json& j) const override;
  std::optional<std::vector<Point>> enumerate() const override;
  std::optional<Point> least_uncovered(const PointSet& target, std::span<const Ball> balls) const override;
  std::optional<Point> least_in_closure(const PointSet& target, std::span<const Ball> balls) const override;
  Point perfect_neighbor(const Point& y, double r) const override;
  Packing pack(const Point& center, double R, std::size_t n, double r_max) const override;

  int depth() const { return static_cast<int>(branching_.size()); }
  double eps() const { return eps_; }
  const std::vector<std::uint64_t>& branching() const { return branching_; }
  const std::vector<int>& capped_levels() const { return capped_; }
  double level_distance(int level) const { return pow_.at(static_cast<std::size_t>(level)); }
  // Prefix length l such that the ball equals the subtree below prefix(center, l).
  int ball_prefix(const Ball& b) const;

 private:
  std::size_t common_prefix(const Point& a, const Point& b) const;
  std::optional<std::vector<std::uint64_t>> least_outside(std::vector<std::uint64_t>& prefix,
                                                          const std::vector<std::vector<std::uint64_t>>& cut) const;
  std::vector<std::uint64_t> leftmost(std::vector<std::uint64_t> prefix) const;

  double eps_;
  std::vector<std::uint64_t> branching_;
  std::vector<double> pow_;
  std::vector<int> capped_;
  double lcd_b_ = -1.0;
  double diameter_ = 0.0;
};

// `spines` copies of [0, length] glued at 0. Not compact once the number of
// spines is infinite; the truncation keeps finitely many. Tips are at mutual
// distance 2*length.
class HedgehogSpace final : public MetricSpace {
 public:
  explicit HedgehogSpace(std::int64_t spines, double length = 0.5);

  SpaceKind kind() const override { return SpaceKind::hedgehog; }
  double distance(const Point& a, const Point& b) const override;
  bool contains(const Point& p) const override;
  double diameter() const override { return spines_ > 1 ? 2 * length_ : length_; }
  Capabilities capabilities() const override;
  Covering cover(std::size_t k) const override;
  CoveringCount covering_number(double delta) const override;
  bool canonical_less(const Point& a, const Point& b) const override;
  Point canonical_least() const override { return hub(); }
  Point sample(Rng& rng) const override;
  nlohmann::json describe() const override;
  nlohmann::json point_to_json(const Point& p) const override;
  Point point_from_json(const nlohmann::json& j) const override;
  bool in_closure(const Point& p, const Ball& b) const override;
  Point perfect_neighbor(const Point& y, double r) const override;

  Point hub() const { return Point{0, 0.0, {}}; }
  Point at(std::int64_t spine, double u) const;
  Point tip(std::int64_t spine) const { return at(spine, length_); }
  std::int64_t spines() const { return spines_; }
  double length() const { return length_; }

 private:
  std::int64_t spines_;
  double length_;
};

}  // namespace liplab
