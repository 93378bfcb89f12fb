#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

HedgehogSpace::HedgehogSpace(std::int64_t spines, double length) : spines_(spines), length_(length) {
  if (spines < 1) throw ValidationError("hedgehog needs at least one spine");
  if (!(length > 0.0)) throw ValidationError("hedgehog spine length must be positive");
}

Point HedgehogSpace::at(std::int64_t spine, double u) const {
  if (spine < 0 || spine >= spines_ || !(u >= 0.0 && u <= length_))
    throw ValidationError("hedgehog point out of range");
  return u == 0.0 ? hub() : Point{spine, u, {}};
}

double HedgehogSpace::distance(const Point& a, const Point& b) const {
  if (a.index == b.index) return std::abs(a.coord - b.coord);
  return a.coord + b.coord;
}

bool HedgehogSpace::contains(const Point& p) const {
  if (!p.path.empty() || p.index < 0 || p.index >= spines_) return false;
  if (!(p.coord >= 0.0 && p.coord <= length_)) return false;
  return p.coord != 0.0 || p.index == 0;
}

Capabilities HedgehogSpace::capabilities() const {
  Capabilities c;
  c.perfect_subspace = true;
  return c;
}

Covering HedgehogSpace::cover(std::size_t k) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  Covering c;
  c.points.push_back(hub());
  auto m = static_cast<std::int64_t>((k - 1) / static_cast<std::size_t>(spines_));
  if (m == 0) {
    c.delta = length_;
    return c;
  }
  double h = length_ / static_cast<double>(m);
  for (std::int64_t s = 0; s < spines_; ++s)
    for (std::int64_t i = 1; i <= m; ++i) c.points.push_back(at(s, i == m ? length_ : static_cast<double>(i) * h));
  c.delta = h / 2.0;
  return c;
}

CoveringCount HedgehogSpace::covering_number(double delta) const {
  if (!(delta > 0.0)) throw ValidationError("hedgehog has no finite covering at delta <= 0");
  CoveringCount out;
  out.exact = false;
  if (delta >= diameter()) {
    out.count = 1;
    out.exact = true;
    return out;
  }
  double rest = length_ - delta / 2.0;
  auto per = static_cast<std::uint64_t>(std::ceil(rest / delta));
  std::uint64_t n = 1 + static_cast<std::uint64_t>(spines_) * per;
  out.count = n;
  out.log_count = std::log(static_cast<double>(n));
  return out;
}

bool HedgehogSpace::canonical_less(const Point& a, const Point& b) const {
  if (a.index != b.index) return a.index < b.index;
  return a.coord < b.coord;
}

Point HedgehogSpace::sample(Rng& rng) const {
  auto s = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(spines_)));
  return at(s, rng.uniform() * length_);
}

nlohmann::json HedgehogSpace::describe() const {
  return {{"kind", "hedgehog"}, {"spines", spines_}, {"length", length_}};
}

nlohmann::json HedgehogSpace::point_to_json(const Point& p) const { return {{"spine", p.index}, {"pos", p.coord}}; }

Point HedgehogSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("spine") || !j.contains("pos"))
    throw ValidationError("hedgehog point must be {\"spine\": i, \"pos\": u}, got " + j.dump());
  return at(j.at("spine").get<std::int64_t>(), j.at("pos").get<double>());
}

bool HedgehogSpace::in_closure(const Point& p, const Ball& b) const { return distance(p, b.center) <= b.radius; }

Point HedgehogSpace::perfect_neighbor(const Point& y, double r) const {
  require(y);
  double d = std::min(0.24 * r, length_ / 2.0);
  if (!(d > 0.0)) throw ResolutionError("radius too small");
  if (y.coord + d <= length_) return at(y.index, y.coord + d);
  return at(y.index, y.coord - d);
}

}  // namespace liplab
