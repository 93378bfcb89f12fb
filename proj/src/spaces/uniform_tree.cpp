#include <algorithm>
#include <cmath>
#include <limits>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

UniformTreeSpace::UniformTreeSpace(double eps, std::vector<std::uint64_t> branching)
    : eps_(eps), branching_(std::move(branching)) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("tree eps must be in (0,1)");
  if (branching_.empty()) throw ValidationError("tree depth must be >= 1");
  if (branching_.size() > 4096) throw ValidationError("tree depth must be <= 4096");
  for (auto m : branching_)
    if (m < 1) throw ValidationError("branching factors must be >= 1");
  for (std::size_t l = 0; l <= branching_.size(); ++l) pow_.push_back(std::pow(eps_, static_cast<double>(l)));
  for (std::size_t l = 0; l < branching_.size(); ++l) {
    if (branching_[l] >= 2) {
      diameter_ = pow_[l];
      break;
    }
  }
}

UniformTreeSpace UniformTreeSpace::with_lcd(double eps, double b, int depth, std::uint64_t cap) {
  if (!(b > 0.0)) throw ValidationError("tree lcd exponent b must be positive");
  if (depth < 1) throw ValidationError("tree depth must be >= 1");
  if (cap < 2) throw ValidationError("branching cap must be >= 2");
  std::vector<std::uint64_t> m;
  std::vector<int> capped;
  const double log_cap = std::log(static_cast<double>(cap));
  for (int i = 0; i < depth; ++i) {
    double x = std::pow(eps, -static_cast<double>(i) * b) * (std::pow(2.0, b) - 1.0);
    if (!(x < log_cap)) {
      m.push_back(cap);
      capped.push_back(i);
    } else {
      m.push_back(static_cast<std::uint64_t>(std::ceil(std::exp(x))));
    }
  }
  UniformTreeSpace t(eps, std::move(m));
  t.capped_ = std::move(capped);
  t.lcd_b_ = b;
  return t;
}

std::size_t UniformTreeSpace::common_prefix(const Point& a, const Point& b) const {
  std::size_t n = std::min(a.path.size(), b.path.size());
  std::size_t i = 0;
  while (i < n && a.path[i] == b.path[i]) ++i;
  return i;
}

double UniformTreeSpace::distance(const Point& a, const Point& b) const {
  std::size_t cp = common_prefix(a, b);
  return cp >= branching_.size() ? 0.0 : pow_[cp];
}

bool UniformTreeSpace::contains(const Point& p) const {
  if (p.index != 0 || p.coord != 0.0 || p.path.size() != branching_.size()) return false;
  for (std::size_t i = 0; i < p.path.size(); ++i)
    if (p.path[i] >= branching_[i]) return false;
  return true;
}

Capabilities UniformTreeSpace::capabilities() const {
  Capabilities c;
  c.perfect_subspace = true;
  c.packable = true;
  c.finite = enumerate().has_value();
  return c;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Calls f on every digit string of length hi-lo (mixed radix, lexicographic) until f returns false.
template <class F>
void for_each_prefix(const std::vector<std::uint64_t>& radix, std::size_t lo, std::size_t hi, F&& f) {
  std::vector<std::uint64_t> digits(hi - lo, 0);
  while (true) {
    if (!f(digits)) return;
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < radix[lo + i]) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (digits.empty()) return;
  }
}

}  // namespace

Covering UniformTreeSpace::cover(std::size_t k) const {
  if (k == 0) throw ValidationError("covering oracle needs k >= 1");
  const std::size_t D = branching_.size();
  std::size_t j = 0;
  std::uint64_t count = 1;
  while (j < D) {
    std::uint64_t next = sat_mul(count, branching_[j]);
    if (next > k) break;
    count = next;
    ++j;
  }
  Covering c;
  c.delta = j < D ? pow_[j] : 0.0;
  for_each_prefix(branching_, 0, j, [&](const std::vector<std::uint64_t>& pre) {
    c.points.push_back(Point::leaf(leftmost(pre)));
    return true;
  });
  return c;
}

CoveringCount UniformTreeSpace::covering_number(double delta) const {
  if (delta < 0.0) throw ValidationError("delta must be nonnegative");
  const std::size_t D = branching_.size();
  std::size_t j = 0;
  while (j < D && pow_[j] > delta) ++j;
  CoveringCount out;
  std::uint64_t count = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < j; ++i) {
    out.log_count += std::log(static_cast<double>(branching_[i]));
    std::uint64_t next = sat_mul(count, branching_[i]);
    if (next == std::numeric_limits<std::uint64_t>::max()) overflow = true;
    count = next;
    if (std::find(capped_.begin(), capped_.end(), static_cast<int>(i)) != capped_.end()) out.capped = true;
  }
  if (!overflow) out.count = count;
  return out;
}

Point UniformTreeSpace::canonical_least() const { return Point::leaf(std::vector<std::uint64_t>(branching_.size(), 0)); }

Point UniformTreeSpace::sample(Rng& rng) const {
  std::vector<std::uint64_t> d(branching_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = rng.below(branching_[i]);
  return Point::leaf(std::move(d));
}

nlohmann::json UniformTreeSpace::describe() const {
  nlohmann::json j{{"kind", "uniform_tree"}, {"eps", eps_}, {"branching", branching_}};
  if (!capped_.empty()) j["capped_levels"] = capped_;
  if (lcd_b_ > 0.0) j["lcd_b"] = lcd_b_;
  return j;
}

Point UniformTreeSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_array()) throw ValidationError("tree point must be an array of digits, got " + j.dump());
  Point p = Point::leaf(j.get<std::vector<std::uint64_t>>());
  require(p);
  return p;
}

std::optional<std::vector<Point>> UniformTreeSpace::enumerate() const {
  std::uint64_t total = 1;
  for (auto m : branching_) total = sat_mul(total, m);
  if (total > (std::uint64_t{1} << 20)) return std::nullopt;
  std::vector<Point> out;
  for_each_prefix(branching_, 0, branching_.size(), [&](const std::vector<std::uint64_t>& d) {
    out.push_back(Point::leaf(d));
    return true;
  });
  return out;
}

int UniformTreeSpace::ball_prefix(const Ball& b) const {
  const int D = depth();
  for (int l = 0; l < D; ++l) {
    double d = pow_[static_cast<std::size_t>(l)];
    if (b.closed ? d <= b.radius : d < b.radius) return l;
  }
  return D;
}

std::vector<std::uint64_t> UniformTreeSpace::leftmost(std::vector<std::uint64_t> prefix) const {
  prefix.resize(branching_.size(), 0);
  return prefix;
}

namespace {

bool is_prefix(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::vector<std::uint64_t> head(const std::vector<std::uint64_t>& path, std::size_t n) {
  return {path.begin(), path.begin() + static_cast<std::ptrdiff_t>(std::min(n, path.size()))};
}

}  // namespace

std::optional<std::vector<std::uint64_t>> UniformTreeSpace::least_outside(
    std::vector<std::uint64_t>& prefix, const std::vector<std::vector<std::uint64_t>>& cut) const {
  for (const auto& c : cut)
    if (is_prefix(c, prefix)) return std::nullopt;
  if (prefix.size() == branching_.size()) return prefix;
  std::vector<std::uint64_t> touched;
  for (const auto& c : cut)
    if (c.size() > prefix.size() && is_prefix(prefix, c)) touched.push_back(c[prefix.size()]);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::uint64_t d = 0;
  for (auto t : touched) {
    if (d < t) {
      prefix.push_back(d);
      auto out = leftmost(prefix);
      prefix.pop_back();
      return out;
    }
    prefix.push_back(t);
    auto found = least_outside(prefix, cut);
    prefix.pop_back();
    if (found) return found;
    d = t + 1;
  }
  if (d < branching_[prefix.size()]) {
    prefix.push_back(d);
    auto out = leftmost(prefix);
    prefix.pop_back();
    return out;
  }
  return std::nullopt;
}

std::optional<Point> UniformTreeSpace::least_uncovered(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_uncovered(target, balls);
  std::vector<std::uint64_t> prefix;
  if (target.kind == PointSet::Kind::ball)
    prefix = head(target.ball.center.path, static_cast<std::size_t>(ball_prefix(target.ball)));
  std::vector<std::vector<std::uint64_t>> cut;
  for (const auto& b : balls) cut.push_back(head(b.center.path, static_cast<std::size_t>(ball_prefix(b))));
  auto leaf = least_outside(prefix, cut);
  if (!leaf) return std::nullopt;
  return Point::leaf(std::move(*leaf));
}

std::optional<Point> UniformTreeSpace::least_in_closure(const PointSet& target, std::span<const Ball> balls) const {
  if (target.kind == PointSet::Kind::points || target.kind == PointSet::Kind::empty)
    return MetricSpace::least_in_closure(target, balls);
  std::vector<std::uint64_t> p;
  if (target.kind == PointSet::Kind::ball) p = head(target.ball.center.path, static_cast<std::size_t>(ball_prefix(target.ball)));
  std::optional<std::vector<std::uint64_t>> best;
  for (const auto& b : balls) {
    auto q = head(b.center.path, static_cast<std::size_t>(ball_prefix(b)));
    std::optional<std::vector<std::uint64_t>> cand;
    if (is_prefix(q, p)) cand = leftmost(p);
    else if (is_prefix(p, q)) cand = leftmost(q);
    if (cand && (!best || *cand < *best)) best = cand;
  }
  if (!best) return std::nullopt;
  return Point::leaf(std::move(*best));
}

Point UniformTreeSpace::perfect_neighbor(const Point& y, double r) const {
  require(y);
  const std::size_t D = branching_.size();
  std::size_t l = 0;
  while (l < D && !(pow_[l] < r / 4.0 && branching_[l] >= 2)) ++l;
  if (l >= D) throw ResolutionError("tree truncation depth too shallow for radius " + std::to_string(r));
  Point z = y;
  z.path[l] = (z.path[l] + 1) % branching_[l];
  return z;
}

Packing UniformTreeSpace::pack(const Point& center, double R, std::size_t n, double r_max) const {
  require(center);
  if (n == 0) throw ValidationError("packing needs n >= 1");
  const std::size_t D = branching_.size();
  std::size_t l = 0;
  while (l < D && pow_[l] > R) ++l;
  std::size_t q = l;
  std::uint64_t count = 1;
  while (q < D) {
    count = sat_mul(count, branching_[q]);
    if (count >= n) break;
    ++q;
  }
  if (q >= D) throw ResolutionError("tree truncation too shallow to pack " + std::to_string(n) + " balls");
  Packing out;
  out.radius = std::min(r_max, 0.45 * pow_[q]);
  auto base = head(center.path, l);
  for_each_prefix(branching_, l, q + 1, [&](const std::vector<std::uint64_t>& d) {
    auto p = base;
    p.insert(p.end(), d.begin(), d.end());
    out.centers.push_back(Point::leaf(leftmost(p)));
    return out.centers.size() < n;
  });
  return out;
}

}  // namespace liplab
