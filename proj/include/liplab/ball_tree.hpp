#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liplab/metric_space.hpp"

namespace liplab {

struct BallNode {
  Point center;
  double radius = 0.0;
  int depth = 0;
  std::int64_t parent = -1;
};

struct TreeCheck {
  bool ok = true;
  std::size_t parent_child_checked = 0;
  std::size_t sibling_checked = 0;
  double worst_parent_margin = 0.0;   // min over pairs of r/2 - (d + r')
  double worst_sibling_margin = 0.0;  // min over pairs of d - (r + r')
  std::string first_failure;
};

// Complete binary ball-tree: node i has children 2i+1 and 2i+2; root (y, 1).
// Children of (y, r) are (y, r') and (y', r') with 0 < d(y, y') < r/4 and
// r' = d(y, y')/3, so that
//   d(x, x') + r' < r/2  for parent/child, and  r_x + r_y < d(x, y) for siblings.
class BallTree {
 public:
  static BallTree build(SpacePtr space, int depth);

  const MetricSpace& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }
  int depth() const { return depth_; }
  const std::vector<BallNode>& nodes() const { return nodes_; }
  const BallNode& node(std::size_t i) const { return nodes_.at(i); }
  static std::size_t child(std::size_t i, int which) { return 2 * i + 1 + static_cast<std::size_t>(which); }
  bool is_leaf(std::size_t i) const { return nodes_[i].depth == depth_; }
  // Minimum radius over nodes at a depth.
  double min_radius(int depth) const;
  // Child of node i whose open ball contains p, or -1.
  std::int64_t child_containing(std::size_t i, const Point& p) const;

  TreeCheck validate() const;

 private:
  SpacePtr space_;
  int depth_ = 0;
  std::vector<BallNode> nodes_;
};

// Bump on a ball: min(r - d(x, c), r/2) inside B(c, r), 0 outside.
double needle(const MetricSpace& space, const Point& c, double r, const Point& x);

}  // namespace liplab
