#include "liplab/ball_tree.hpp"

#include <algorithm>
#include <limits>

#include "liplab/errors.hpp"

namespace liplab {

double needle(const MetricSpace& space, const Point& c, double r, const Point& x) {
  double d = space.distance(c, x);
  if (d >= r) return 0.0;
  return std::min(r - d, r / 2.0);
}

BallTree BallTree::build(SpacePtr space, int depth) {
  if (!space) throw ValidationError("ball tree needs a space");
  if (depth < 0 || depth > 40) throw ValidationError("ball tree depth must be in [0, 40]");
  if (!space->capabilities().perfect_subspace) throw CapabilityError(space->name() + " space has no perfect subspace for a ball tree");
  BallTree t;
  t.space_ = space;
  t.depth_ = depth;
  std::size_t total = (std::size_t{1} << (depth + 1)) - 1;
  t.nodes_.reserve(total);
  Point root = space->kind() == SpaceKind::interval ? Point::real(0.5) : space->canonical_least();
  t.nodes_.push_back({root, 1.0, 0, -1});
  for (std::size_t i = 0; t.nodes_.size() < total; ++i) {
    const BallNode parent = t.nodes_[i];
    Point y2 = space->perfect_neighbor(parent.center, parent.radius);
    double d = space->distance(parent.center, y2);
    if (!(d > 0.0)) throw ResolutionError("perfect-subspace sampler returned the centre itself");
    double r2 = d / 3.0;
    t.nodes_.push_back({parent.center, r2, parent.depth + 1, static_cast<std::int64_t>(i)});
    t.nodes_.push_back({y2, r2, parent.depth + 1, static_cast<std::int64_t>(i)});
  }
  return t;
}

double BallTree::min_radius(int depth) const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& n : nodes_)
    if (n.depth == depth) r = std::min(r, n.radius);
  return r;
}

std::int64_t BallTree::child_containing(std::size_t i, const Point& p) const {
  if (is_leaf(i)) return -1;
  for (int w = 0; w < 2; ++w) {
    std::size_t c = child(i, w);
    if (space_->distance(nodes_[c].center, p) < nodes_[c].radius) return static_cast<std::int64_t>(c);
  }
  return -1;
}

TreeCheck BallTree::validate() const {
  TreeCheck chk;
  chk.worst_parent_margin = std::numeric_limits<double>::infinity();
  chk.worst_sibling_margin = std::numeric_limits<double>::infinity();
  auto fail = [&](const std::string& msg) {
    if (chk.ok) chk.first_failure = msg;
    chk.ok = false;
  };
  if (nodes_.empty() || nodes_[0].radius > 1.0) fail("root radius exceeds 1");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (is_leaf(i)) continue;
    const auto& p = nodes_[i];
    const auto& a = nodes_[child(i, 0)];
    const auto& b = nodes_[child(i, 1)];
    for (const auto* c : {&a, &b}) {
      double margin = p.radius / 2.0 - (space_->distance(p.center, c->center) + c->radius);
      chk.worst_parent_margin = std::min(chk.worst_parent_margin, margin);
      ++chk.parent_child_checked;
      if (!(margin > 0.0)) fail("parent/child containment fails at node " + std::to_string(i));
    }
    double sm = space_->distance(a.center, b.center) - (a.radius + b.radius);
    chk.worst_sibling_margin = std::min(chk.worst_sibling_margin, sm);
    ++chk.sibling_checked;
    if (!(sm > 0.0)) fail("sibling disjointness fails below node " + std::to_string(i));
  }
  return chk;
}

}  // namespace liplab
