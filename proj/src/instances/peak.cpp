#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"

namespace liplab {

namespace {

double noisy(NoiseModel noise, double mu, std::uint64_t key, const Point& x) {
  if (noise == NoiseModel::none) return mu;
  return keyed_uniform(key, point_key(x)) < mu ? 1.0 : 0.0;
}

// Largest distance from p, exact on line and enumerable spaces.
double reach(const MetricSpace& s, const Point& p) {
  if (s.kind() == SpaceKind::interval || s.kind() == SpaceKind::dyadic) return std::max(p.coord, 1.0 - p.coord);
  if (auto pts = s.enumerate()) {
    double r = 0.0;
    for (const auto& q : *pts) r = std::max(r, s.distance(p, q));
    return r;
  }
  return s.diameter();
}

}  // namespace

PeakInstance::PeakInstance(SpacePtr space, Point peak, double slope, double top, NoiseModel noise, bool unchecked)
    : PayoffInstance(std::move(space)), peak_(std::move(peak)), slope_(slope), top_(top), noise_(noise) {
  space_->require(peak_);
  if (!(top >= 0.0 && top <= 1.0)) throw ValidationError("peak value must be in [0,1]");
  if (!(slope > 0.0)) throw ValidationError("peak slope must be positive");
  if (slope > 1.0) {
    if (!unchecked) throw ValidationError("peak slope must be <= 1 for a 1-Lipschitz mean");
    warn("slope " + std::to_string(slope) + " > 1: the mean is not 1-Lipschitz");
  }
  if (top - slope * reach(*space_, peak_) < 0.0) {
    if (!unchecked) throw ValidationError("peak mean would go negative: need top >= slope * max distance from the peak");
    warn("mean clamped at 0 away from the peak");
  }
}

double PeakInstance::mean(const Point& x) const { return std::max(0.0, top_ - slope_ * space_->distance(x, peak_)); }

double PeakInstance::realize(std::uint64_t key, const Point& x) const { return noisy(noise_, mean(x), key, x); }

nlohmann::json PeakInstance::describe() const {
  auto j = base_json();
  j["peak"] = space_->point_to_json(peak_);
  j["slope"] = slope_;
  j["top"] = top_;
  j["noise"] = to_string(noise_);
  return j;
}

TableInstance::TableInstance(SpacePtr space, std::vector<double> means, NoiseModel noise)
    : PayoffInstance(std::move(space)), means_(std::move(means)), noise_(noise) {
  auto pts = space_->enumerate();
  if (!pts || space_->kind() == SpaceKind::dyadic) throw CapabilityError("table instances need a finite space");
  if (pts->size() != means_.size())
    throw ValidationError("table needs one mean per point (" + std::to_string(pts->size()) + ")");
  for (double m : means_)
    if (!(m >= 0.0 && m <= 1.0)) throw ValidationError("table means must lie in [0,1]");
  for (std::size_t i = 0; i < pts->size(); ++i)
    for (std::size_t j = i + 1; j < pts->size(); ++j)
      if (std::abs(means_[i] - means_[j]) > space_->distance((*pts)[i], (*pts)[j]) + 1e-12)
        throw ValidationError("table means are not 1-Lipschitz at points " + std::to_string(i) + ", " + std::to_string(j));
}

double TableInstance::sup_mean() const { return *std::max_element(means_.begin(), means_.end()); }

Point TableInstance::argmax() const {
  auto it = std::max_element(means_.begin(), means_.end());
  return (*space_->enumerate())[static_cast<std::size_t>(it - means_.begin())];
}

double TableInstance::realize(std::uint64_t key, const Point& x) const { return noisy(noise_, mean(x), key, x); }

nlohmann::json TableInstance::describe() const {
  auto j = base_json();
  j["means"] = means_;
  j["noise"] = to_string(noise_);
  return j;
}

}  // namespace liplab
