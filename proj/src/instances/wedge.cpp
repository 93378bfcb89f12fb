#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

WedgeInstance::WedgeInstance(SpacePtr space, Options opt) : PayoffInstance(std::move(space)), opt_(std::move(opt)) {
  const double r = opt_.radius;
  if (!(r > 0.0 && r <= 0.5)) throw ValidationError("wedge radius must be in (0, 1/2]");
  if (opt_.t_schedule.empty()) throw ValidationError("wedge t_schedule must be nonempty");
  for (std::size_t k = 1; k < opt_.t_schedule.size(); ++k)
    if (opt_.t_schedule[k] <= opt_.t_schedule[k - 1]) throw ValidationError("wedge t_schedule must be strictly increasing");
  if (opt_.t_schedule.front() < 1) throw ValidationError("wedge t_schedule entries must be >= 1");
  bool fast = opt_.t_schedule.front() >= 5;
  for (std::size_t k = 1; k < opt_.t_schedule.size(); ++k) fast = fast && opt_.t_schedule[k] > 2 * opt_.t_schedule[k - 1];
  if (!fast) warn("t_schedule does not satisfy t_1 >= 5 and t_{k+1} > 2 t_k");

  std::vector<std::size_t> sizes = opt_.sizes;
  if (sizes.empty()) {
    for (int t : opt_.t_schedule) {
      if (t > 12) throw ValidationError("interval size 4^" + std::to_string(t) + " is too large to materialize; give explicit sizes");
      sizes.push_back(std::size_t{1} << (2 * t));
    }
  } else {
    if (sizes.size() != opt_.t_schedule.size()) throw ValidationError("wedge sizes need one entry per t_schedule entry");
    warn("interval sizes overridden (desk scale)");
  }
  std::size_t total = 0;
  for (auto s : sizes) {
    if (s == 0) throw ValidationError("wedge interval sizes must be positive");
    starts_.push_back(total);
    total += s;
  }
  if (opt_.centers.size() < total)
    throw ValidationError("wedge needs " + std::to_string(total) + " centres, got " + std::to_string(opt_.centers.size()));
  opt_.centers.resize(total);
  for (const auto& c : opt_.centers) space_->require(c);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = i + 1; j < total; ++j)
      if (!(space_->distance(opt_.centers[i], opt_.centers[j]) > 2.0 * r))
        throw ValidationError("wedge balls must be disjoint: centres " + std::to_string(i) + ", " + std::to_string(j) + " too close");
  Rng rng = Rng(opt_.seed).split("wedge");
  fixed_.assign(total, false);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::size_t j = starts_[k] + static_cast<std::size_t>(rng.below(sizes[k]));
    j_.push_back(j);
    fixed_[j] = true;
  }
  opt_.sizes = sizes;
}

std::size_t WedgeInstance::interval_of(std::size_t i) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

std::int64_t WedgeInstance::ball_of(const Point& x, double* dist) const {
  if (space_->kind() == SpaceKind::hedgehog) {
    // tips sit on their own spine; the only candidate ball is on x's spine
    for (std::size_t i = 0; i < opt_.centers.size(); ++i) {
      if (opt_.centers[i].index != x.index) continue;
      double d = space_->distance(x, opt_.centers[i]);
      if (d < opt_.radius) {
        *dist = d;
        return static_cast<std::int64_t>(i);
      }
    }
    return -1;
  }
  for (std::size_t i = 0; i < opt_.centers.size(); ++i) {
    double d = space_->distance(x, opt_.centers[i]);
    if (d < opt_.radius) {
      *dist = d;
      return static_cast<std::int64_t>(i);
    }
  }
  return -1;
}

double WedgeInstance::mean(const Point& x) const {
  double d = 0.0;
  auto i = ball_of(x, &d);
  if (i < 0 || !fixed_[static_cast<std::size_t>(i)]) return 0.5;
  double rk = inner_radius(interval_of(static_cast<std::size_t>(i)));
  return 0.5 + std::min(opt_.radius - d, opt_.radius - rk);
}

double WedgeInstance::realize(std::uint64_t key, const Point& x) const {
  double d = 0.0;
  auto i = ball_of(x, &d);
  if (i < 0) return 0.5;
  auto ui = static_cast<std::size_t>(i);
  double rk = inner_radius(interval_of(ui));
  double g = std::min(opt_.radius - d, opt_.radius - rk);
  int s = fixed_[ui] ? 1 : keyed_sign(key, ui, 0.0);
  return 0.5 + s * g;
}

double WedgeInstance::sup_mean() const { return 0.5 + opt_.radius - inner_radius(intervals() - 1); }

Point WedgeInstance::argmax() const { return opt_.centers[j_.back()]; }

Point WedgeInstance::probe(Rng& rng) const {
  const auto& c = opt_.centers[static_cast<std::size_t>(rng.below(opt_.centers.size()))];
  if (rng.bernoulli(0.25)) return c;
  if (space_->kind() == SpaceKind::hedgehog && c.index >= 0) {
    const auto& h = static_cast<const HedgehogSpace&>(*space_);
    double u = c.coord - rng.uniform() * std::min(c.coord, 1.3 * opt_.radius);
    return h.at(c.index, std::max(0.0, u));
  }
  if (space_->kind() == SpaceKind::interval) {
    double x = c.coord + (2.0 * rng.uniform() - 1.0) * 1.3 * opt_.radius;
    return Point::real(std::clamp(x, 0.0, 1.0));
  }
  return space_->sample(rng);
}

nlohmann::json WedgeInstance::describe() const {
  auto j = base_json();
  j["radius"] = opt_.radius;
  j["t_schedule"] = opt_.t_schedule;
  j["sizes"] = opt_.sizes;
  j["chosen"] = j_;
  j["seed"] = opt_.seed;
  return j;
}

}  // namespace liplab
