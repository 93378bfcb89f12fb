#pragma once

#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "liplab/metric_space.hpp"

namespace liplab {

struct DepthResult {
  Point point;
  int level = 0;
};

struct CoverResult {
  bool covered = false;
  std::optional<Point> witness;
  int level = 0;
};

// Finite-depth chain X = S_0 ⊇ S_1 ⊇ ... ⊇ S_{beta-1} ⊇ S_beta = ∅ of closed
// sets, each level carrying a target dimension (used by the experts
// algorithms only through the overall exponent b).
class DepthStructure {
 public:
  // `levels` lists S_1 .. S_{beta-1}; S_0 is the whole space.
  DepthStructure(SpacePtr space, std::vector<PointSet> levels, double dimension = 0.0);
  static DepthStructure trivial(SpacePtr space, double dimension = 0.0) { return DepthStructure(std::move(space), {}, dimension); }

  const MetricSpace& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  double dimension() const { return dimension_; }
  const PointSet& level(int lambda) const;
  int level_of(const Point& p) const;

  // Deepest lambda whose S_lambda meets the closure of the union of balls, and
  // the canonically least point of that intersection.
  DepthResult depth_oracle(std::span<const Ball> balls) const;

  // With lambda the level of the anchor (0 without one): reports whether
  // S_lambda is covered by the balls, else the least uncovered point.
  CoverResult cover_oracle(const std::optional<Point>& anchor, std::span<const Ball> balls) const;

  // Greedy net of S_lambda minus `exclude`: repeatedly asks the cover oracle
  // and adds an open ball of `radius` around each witness, up to `cap` points.
  std::vector<Point> build_net(const std::optional<Point>& anchor, const std::vector<Ball>& exclude, double radius,
                               std::size_t cap, bool* truncated = nullptr) const;

  nlohmann::json describe() const;

 private:
  SpacePtr space_;
  std::vector<PointSet> levels_;  // S_0 .. S_{beta-1}
  PointSet empty_ = PointSet::none();
  double dimension_;
};

DepthStructure make_decomposition(SpacePtr space, const nlohmann::json& descriptor);

}  // namespace liplab
