#include "liplab/errors.hpp"
#include "liplab/instances.hpp"
#include "liplab/space_json.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

namespace {

std::vector<Point> points_from(const MetricSpace& s, const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an array of points");
  std::vector<Point> out;
  for (const auto& p : arr) out.push_back(s.point_from_json(p));
  return out;
}

InstancePtr make_wedge(SpacePtr space, const nlohmann::json& d) {
  check_keys(d, {"kind", "centers", "radius", "t_schedule", "sizes", "seed"}, "wedge instance");
  WedgeInstance::Options o;
  o.radius = get_or(d, "radius", o.radius);
  o.t_schedule = get_or(d, "t_schedule", o.t_schedule);
  o.sizes = get_or(d, "sizes", o.sizes);
  o.seed = get_or<std::uint64_t>(d, "seed", 0);
  const auto& c = d.at("centers");
  if (c.is_string()) {
    if (c.get<std::string>() != "tips" || space->kind() != SpaceKind::hedgehog)
      throw ValidationError("centers: \"tips\" is only valid on a hedgehog space");
    const auto& h = static_cast<const HedgehogSpace&>(*space);
    for (std::int64_t i = 0; i < h.spines(); ++i) o.centers.push_back(h.tip(i));
  } else {
    o.centers = points_from(*space, c, "centers");
  }
  return std::make_shared<const WedgeInstance>(std::move(space), std::move(o));
}

}  // namespace

InstancePtr make_instance(SpacePtr space, const nlohmann::json& d) {
  if (!space) throw ValidationError("instance needs a space");
  if (!d.is_object() || !d.contains("kind")) throw ValidationError("instance descriptor needs a \"kind\"");
  const auto kind = d.at("kind").get<std::string>();
  try {
    if (kind == "peak") {
      check_keys(d, {"kind", "peak", "slope", "top", "noise", "unchecked"}, "peak instance");
      Point peak = d.contains("peak") ? space->point_from_json(d.at("peak")) : space->canonical_least();
      return std::make_shared<const PeakInstance>(space, peak, get_or(d, "slope", 1.0), get_or(d, "top", 1.0),
                                                  parse_noise(get_or<std::string>(d, "noise", "bernoulli")),
                                                  get_or(d, "unchecked", false));
    }
    if (kind == "table") {
      check_keys(d, {"kind", "means", "noise"}, "table instance");
      return std::make_shared<const TableInstance>(space, d.at("means").get<std::vector<double>>(),
                                                   parse_noise(get_or<std::string>(d, "noise", "bernoulli")));
    }
    if (kind == "lineage") {
      check_keys(d, {"kind", "depth", "gamma", "seed", "biases", "choice"}, "lineage instance");
      LineageInstance::Options o;
      o.depth = get_or(d, "depth", o.depth);
      o.gamma = get_or(d, "gamma", o.gamma);
      o.seed = get_or<std::uint64_t>(d, "seed", 0);
      o.biases = get_or(d, "biases", o.biases);
      o.choice = get_or(d, "choice", o.choice);
      return std::make_shared<const LineageInstance>(space, std::move(o));
    }
    if (kind == "logt") {
      check_keys(d, {"kind", "sequence", "limit", "index", "noise"}, "logt instance");
      return std::make_shared<const LogtInstance>(space, points_from(*space, d.at("sequence"), "sequence"),
                                                  space->point_from_json(d.at("limit")), get_or(d, "index", 0),
                                                  parse_noise(get_or<std::string>(d, "noise", "bernoulli")));
    }
    if (kind == "wedge") return make_wedge(space, d);
    if (kind == "bump") {
      check_keys(d, {"kind", "b", "depth", "seed", "count_cap"}, "bump instance");
      BumpInstance::Options o;
      o.b = get_or(d, "b", o.b);
      o.depth = get_or(d, "depth", o.depth);
      o.seed = get_or<std::uint64_t>(d, "seed", 0);
      o.count_cap = get_or(d, "count_cap", o.count_cap);
      return std::make_shared<const BumpInstance>(space, o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(kind + " instance: " + e.what());
  }
  throw ValidationError("unknown instance kind '" + kind + "'");
}

}  // namespace liplab
