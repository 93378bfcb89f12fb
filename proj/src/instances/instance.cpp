#include "liplab/errors.hpp"
#include "liplab/instances.hpp"

namespace liplab {

NoiseModel parse_noise(const std::string& s) {
  if (s == "bernoulli") return NoiseModel::bernoulli;
  if (s == "none") return NoiseModel::none;
  throw ValidationError("noise must be 'bernoulli' or 'none', got '" + s + "'");
}

std::string to_string(NoiseModel n) { return n == NoiseModel::bernoulli ? "bernoulli" : "none"; }

double PayoffSample::operator()(const Point& x) const { return inst_->realize(key_, x); }

PayoffInstance::PayoffInstance(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw ValidationError("instance needs a space");
}

nlohmann::json PayoffInstance::base_json() const {
  nlohmann::json j{{"kind", kind()}, {"sup_mean", sup_mean()}, {"argmax", space_->point_to_json(argmax())}};
  if (!warnings_.empty()) {
    j["guarantee_breaking"] = true;
    j["warnings"] = warnings_;
  }
  return j;
}

int keyed_sign(std::uint64_t key, std::uint64_t id, double bias) {
  return keyed_uniform(key, id, 0x5167a1) < 0.5 * (1.0 + bias) ? 1 : -1;
}

}  // namespace liplab
