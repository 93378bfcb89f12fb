#include "liplab/decomposition.hpp"

#include <algorithm>

#include "liplab/errors.hpp"
#include "liplab/space_json.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

namespace {

bool nested(const MetricSpace& space, const PointSet& inner, const PointSet& outer) {
  using K = PointSet::Kind;
  if (inner.kind == K::empty || outer.kind == K::all) return true;
  if (inner.kind == K::all) return false;
  if (inner.kind == K::points)
    return std::all_of(inner.points.begin(), inner.points.end(), [&](const Point& p) { return space.in_set(p, outer); });
  if (outer.kind != K::ball) return false;
  double d = space.distance(inner.ball.center, outer.ball.center);
  if (d + inner.ball.radius <= outer.ball.radius) return true;
  // ultrametric balls: containment only needs max(d, r) <= R
  return space.kind() == SpaceKind::uniform_tree && std::max(d, inner.ball.radius) <= outer.ball.radius;
}

}  // namespace

DepthStructure::DepthStructure(SpacePtr space, std::vector<PointSet> levels, double dimension)
    : space_(std::move(space)), dimension_(dimension) {
  if (!space_) throw ValidationError("decomposition needs a space");
  levels_.push_back(PointSet::whole());
  for (auto& s : levels) {
    if (s.kind == PointSet::Kind::empty) break;  // S_beta
    if (s.kind == PointSet::Kind::points)
      for (const auto& p : s.points) space_->require(p);
    if (s.kind == PointSet::Kind::ball) space_->require(s.ball.center);
    if (!nested(*space_, s, levels_.back()))
      throw ValidationError("decomposition levels must be nested (level " + std::to_string(levels_.size()) + ")");
    levels_.push_back(std::move(s));
  }
}

const PointSet& DepthStructure::level(int lambda) const {
  if (lambda < 0) throw ValidationError("negative decomposition level");
  if (lambda >= depth()) return empty_;
  return levels_[static_cast<std::size_t>(lambda)];
}

int DepthStructure::level_of(const Point& p) const {
  space_->require(p);
  int lambda = 0;
  while (lambda + 1 < depth() && space_->in_set(p, levels_[static_cast<std::size_t>(lambda + 1)])) ++lambda;
  return lambda;
}

DepthResult DepthStructure::depth_oracle(std::span<const Ball> balls) const {
  if (balls.empty()) throw ValidationError("depth oracle needs at least one ball");
  for (int lambda = depth() - 1; lambda >= 0; --lambda) {
    auto p = space_->least_in_closure(level(lambda), balls);
    if (p) return {*p, lambda};
  }
  throw ValidationError("balls do not meet the space");
}

CoverResult DepthStructure::cover_oracle(const std::optional<Point>& anchor, std::span<const Ball> balls) const {
  CoverResult out;
  out.level = anchor ? level_of(*anchor) : 0;
  out.witness = space_->least_uncovered(level(out.level), balls);
  out.covered = !out.witness.has_value();
  return out;
}

std::vector<Point> DepthStructure::build_net(const std::optional<Point>& anchor, const std::vector<Ball>& exclude,
                                             double radius, std::size_t cap, bool* truncated) const {
  std::vector<Ball> balls = exclude;
  std::vector<Point> net;
  if (truncated) *truncated = false;
  while (true) {
    auto res = cover_oracle(anchor, balls);
    if (res.covered) break;
    if (net.size() >= cap) {
      if (truncated) *truncated = true;
      break;
    }
    net.push_back(*res.witness);
    balls.push_back(Ball::open(*res.witness, radius));
  }
  return net;
}

nlohmann::json DepthStructure::describe() const {
  nlohmann::json lv = nlohmann::json::array();
  for (std::size_t i = 1; i < levels_.size(); ++i) lv.push_back(point_set_to_json(*space_, levels_[i]));
  return {{"dimension", dimension_}, {"levels", lv}};
}

DepthStructure make_decomposition(SpacePtr space, const nlohmann::json& j) {
  if (j.is_null()) return DepthStructure::trivial(std::move(space));
  check_keys(j, {"dimension", "levels"}, "decomposition");
  std::vector<PointSet> levels;
  if (j.contains("levels"))
    for (const auto& s : j.at("levels")) levels.push_back(point_set_from_json(*space, s));
  return DepthStructure(std::move(space), std::move(levels), get_or(j, "dimension", 0.0));
}

}  // namespace liplab
