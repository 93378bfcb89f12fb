#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"

namespace liplab {

LogtInstance::LogtInstance(SpacePtr space, std::vector<Point> sequence, Point limit, int index, NoiseModel noise)
    : PayoffInstance(std::move(space)), seq_(std::move(sequence)), limit_(std::move(limit)), index_(index), noise_(noise) {
  if (seq_.empty()) throw ValidationError("log(t) ensemble needs a nonempty sequence");
  space_->require(limit_);
  for (const auto& p : seq_) {
    space_->require(p);
    radii_.push_back(space_->distance(p, limit_));
  }
  for (std::size_t j = 0; j < radii_.size(); ++j) {
    if (!(radii_[j] > 0.0)) throw ValidationError("sequence points must differ from the limit");
    if (j > 0 && !(radii_[j] < radii_[j - 1] / 2.0))
      throw ValidationError("sequence radii must satisfy r_{j+1} < r_j / 2 (fails at j = " + std::to_string(j) + ")");
  }
  if (index_ < 0 || static_cast<std::size_t>(index_) > seq_.size()) throw ValidationError("ensemble index out of range");
}

double LogtInstance::mean(const Point& x) const {
  double mu = 0.5 - space_->distance(x, limit_) / 8.0;
  if (index_ > 0) mu += 0.75 * std::max(0.0, radius(index_) / 3.0 - space_->distance(x, center(index_)));
  return mu;
}

bool LogtInstance::in_bump(int j, const Point& x) const { return space_->distance(x, center(j)) < radius(j) / 3.0; }

double LogtInstance::sup_mean() const { return index_ == 0 ? 0.5 : 0.5 + radius(index_) / 8.0; }

Point LogtInstance::argmax() const { return index_ == 0 ? limit_ : center(index_); }

double LogtInstance::realize(std::uint64_t key, const Point& x) const {
  double mu = mean(x);
  if (noise_ == NoiseModel::none) return mu;
  return keyed_uniform(key, point_key(x)) < mu ? 1.0 : 0.0;
}

Point LogtInstance::probe(Rng& rng) const {
  if (rng.bernoulli(0.5)) return space_->sample(rng);
  return rng.bernoulli(0.5) ? limit_ : seq_[static_cast<std::size_t>(rng.below(seq_.size()))];
}

nlohmann::json LogtInstance::describe() const {
  auto j = base_json();
  j["index"] = index_;
  j["limit"] = space_->point_to_json(limit_);
  nlohmann::json s = nlohmann::json::array();
  for (const auto& p : seq_) s.push_back(space_->point_to_json(p));
  j["sequence"] = s;
  j["radii"] = radii_;
  j["noise"] = to_string(noise_);
  return j;
}

std::vector<std::shared_ptr<const LogtInstance>> make_logt_ensemble(SpacePtr space, std::vector<Point> sequence, Point limit,
                                                                     NoiseModel noise) {
  std::vector<std::shared_ptr<const LogtInstance>> out;
  for (int i = 0; i <= static_cast<int>(sequence.size()); ++i)
    out.push_back(std::make_shared<const LogtInstance>(space, sequence, limit, i, noise));
  return out;
}

}  // namespace liplab
