#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

namespace {

constexpr std::size_t kMaxPoints = 2'000'000;

void build(double anchor, double scale, int depth, int terms, std::vector<std::pair<double, int>>& out) {
  if (out.size() >= kMaxPoints) throw ValidationError("countable space truncation exceeds 2e6 points");
  out.emplace_back(anchor, depth);
  if (depth == 0) return;
  for (int n = 1; n <= terms; ++n) {
    double dn = static_cast<double>(n);
    build(anchor + scale / dn, scale / (4.0 * dn * dn), depth - 1, terms, out);
  }
}

double nearest_in(const std::vector<double>& sorted, double v) {
  if (sorted.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - v;
  if (it != sorted.begin()) best = std::min(best, v - *std::prev(it));
  return best;
}

}  // namespace

CountableSpace::CountableSpace(std::vector<Cluster> clusters) : clusters_(std::move(clusters)) {
  if (clusters_.empty()) throw ValidationError("countable space needs at least one cluster");
  std::vector<std::pair<double, int>> raw;
  for (const auto& c : clusters_) {
    if (!(c.scale > 0.0) || !std::isfinite(c.anchor)) throw ValidationError("cluster scale must be positive and anchor finite");
    if (c.depth < 0 || c.terms < 1) throw ValidationError("cluster depth must be >= 0 and terms >= 1");
    build(c.anchor, c.scale, c.depth, c.terms, raw);
  }
  std::sort(raw.begin(), raw.end());
  for (const auto& [v, r] : raw) {
    if (!values_.empty() && values_.back() == v) {
      ranks_.back() = std::max(ranks_.back(), r);
    } else {
      values_.push_back(v);
      ranks_.push_back(r);
    }
  }
  max_rank_ = *std::max_element(ranks_.begin(), ranks_.end());
  for (std::size_t i = 0; i < values_.size(); ++i) points_.push_back(at(static_cast<std::int64_t>(i)));
  well_order_ = points_;
  std::sort(well_order_.begin(), well_order_.end(), [this](const Point& a, const Point& b) { return well_less(a, b); });
  full_order_ = cover_order(-1);
}

std::vector<std::size_t> CountableSpace::cover_order(int only_rank) const {
  const std::size_t n = values_.size();
  // distance from each point to the nearest point of strictly higher rank
  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  for (int r = 0; r < max_rank_; ++r) {
    std::vector<double> higher;
    for (std::size_t i = 0; i < n; ++i)
      if (ranks_[i] > r) higher.push_back(values_[i]);
    for (std::size_t i = 0; i < n; ++i)
      if (ranks_[i] == r) gap[i] = nearest_in(higher, values_[i]);
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (only_rank < 0 || ranks_[i] == only_rank) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (ranks_[a] != ranks_[b]) return ranks_[a] > ranks_[b];
    if (gap[a] != gap[b]) return gap[a] > gap[b];
    return a < b;
  });
  return idx;
}

Covering CountableSpace::take(const std::vector<std::size_t>& order, std::size_t k, int only_rank) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  Covering c;
  std::size_t m = std::min(k, order.size());
  std::vector<double> chosen;
  for (std::size_t i = 0; i < m; ++i) {
    c.points.push_back(at(static_cast<std::int64_t>(order[i])));
    chosen.push_back(values_[order[i]]);
  }
  std::sort(chosen.begin(), chosen.end());
  // exhaustive scan of the truncation; distances are recomputed through
  // distance() so closed balls of radius delta contain the extremal points
  double delta = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (only_rank >= 0 && ranks_[i] != only_rank) continue;
    auto it = std::lower_bound(chosen.begin(), chosen.end(), values_[i]);
    double best = std::numeric_limits<double>::infinity();
    if (it != chosen.end()) best = std::abs(*it - values_[i]);
    if (it != chosen.begin()) best = std::min(best, std::abs(values_[i] - *std::prev(it)));
    delta = std::max(delta, best);
  }
  c.delta = delta;
  return c;
}

Covering CountableSpace::cover(std::size_t k) const { return take(full_order_, k, -1); }

Covering CountableSpace::rank_cover(int rank, std::size_t k) const {
  if (rank < 0 || rank > max_rank_) throw ValidationError("rank " + std::to_string(rank) + " is outside [0, " + std::to_string(max_rank_) + "]");
  return take(cover_order(rank), k, rank);
}

double CountableSpace::distance(const Point& a, const Point& b) const { return std::abs(a.coord - b.coord); }

bool CountableSpace::contains(const Point& p) const {
  return p.path.empty() && p.index >= 0 && static_cast<std::size_t>(p.index) < values_.size() &&
         values_[static_cast<std::size_t>(p.index)] == p.coord;
}

Capabilities CountableSpace::capabilities() const {
  Capabilities c;
  c.finite = true;
  c.well_ordered = true;
  c.cb_ranked = true;
  return c;
}

CoveringCount CountableSpace::covering_number(double delta) const {
  if (delta < 0.0) throw ValidationError("delta must be nonnegative");
  std::uint64_t n = 0;
  std::size_t i = 0;
  while (i < values_.size()) {
    ++n;
    double start = values_[i];
    while (i < values_.size() && values_[i] - start <= delta) ++i;
  }
  CoveringCount out;
  out.count = n;
  out.log_count = std::log(static_cast<double>(n));
  return out;
}

nlohmann::json CountableSpace::describe() const {
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : clusters_)
    cl.push_back({{"anchor", c.anchor}, {"scale", c.scale}, {"depth", c.depth}, {"terms", c.terms}});
  return {{"kind", "countable"}, {"clusters", cl}, {"points", values_.size()}, {"cb_rank", max_rank_}};
}

Point CountableSpace::find(double value) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  std::size_t best = values_.size();
  double gap = std::numeric_limits<double>::infinity();
  if (it != values_.end()) {
    best = static_cast<std::size_t>(it - values_.begin());
    gap = *it - value;
  }
  if (it != values_.begin() && value - *std::prev(it) < gap) {
    best = static_cast<std::size_t>(it - values_.begin()) - 1;
    gap = value - *std::prev(it);
  }
  if (best == values_.size() || gap > 1e-12 * std::max(1.0, std::abs(value)))
    throw ValidationError("value " + std::to_string(value) + " is not a point of the countable space");
  return at(static_cast<std::int64_t>(best));
}

Point CountableSpace::point_from_json(const nlohmann::json& j) const {
  if (j.is_object() && j.contains("index")) {
    Point p = at(j.at("index").get<std::int64_t>());
    return p;
  }
  if (!j.is_number()) throw ValidationError("countable-space point must be a number, got " + j.dump());
  return find(j.get<double>());
}

bool CountableSpace::in_closure(const Point& p, const Ball& b) const {
  double d = distance(p, b.center);
  if (b.closed) return d <= b.radius;
  if (d < b.radius) return true;
  // a limit point on the sphere is in the closure when its sequence
  // (accumulating from above) enters the ball, i.e. the centre lies above it
  return d == b.radius && point_rank(p) >= 1 && b.center.coord > p.coord;
}

bool CountableSpace::well_less(const Point& a, const Point& b) const {
  int ra = ranks_[static_cast<std::size_t>(a.index)];
  int rb = ranks_[static_cast<std::size_t>(b.index)];
  if (ra != rb) return ra < rb;
  return a.coord > b.coord;
}

int CountableSpace::point_rank(const Point& p) const {
  require(p);
  return ranks_[static_cast<std::size_t>(p.index)];
}

std::vector<Point> CountableSpace::limit_set(int level) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (ranks_[i] >= level) out.push_back(points_[i]);
  return out;
}

}  // namespace liplab
