#include "liplab/space_json.hpp"

#include <algorithm>

#include "liplab/errors.hpp"
#include "liplab/spaces.hpp"

namespace liplab {

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " descriptor must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ValidationError("unknown field '" + key + "' in " + what + " descriptor");
  }
}

namespace {

SpacePtr build(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("space descriptor needs a \"kind\" field");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "interval") {
    check_keys(j, {"kind", "resolution"}, "interval space");
    return std::make_shared<IntervalSpace>(get_or(j, "resolution", 0x1p-48));
  }
  if (kind == "dyadic") {
    check_keys(j, {"kind", "level"}, "dyadic space");
    return std::make_shared<DyadicSpace>(j.at("level").get<int>());
  }
  if (kind == "finite") {
    check_keys(j, {"kind", "coords", "matrix", "uniform", "distance"}, "finite space");
    if (j.contains("coords")) return std::make_shared<FiniteSpace>(FiniteSpace::from_coords(j.at("coords").get<std::vector<double>>()));
    if (j.contains("matrix"))
      return std::make_shared<FiniteSpace>(FiniteSpace::from_matrix(j.at("matrix").get<std::vector<std::vector<double>>>()));
    if (j.contains("uniform"))
      return std::make_shared<FiniteSpace>(FiniteSpace::uniform(j.at("uniform").get<std::size_t>(), get_or(j, "distance", 1.0)));
    throw ValidationError("finite space needs \"coords\", \"matrix\" or \"uniform\"");
  }
  if (kind == "sequence") {
    check_keys(j, {"kind", "terms"}, "sequence space");
    return std::make_shared<CountableSpace>(CountableSpace::sequence(j.at("terms").get<int>()));
  }
  if (kind == "two_limit") {
    check_keys(j, {"kind", "terms"}, "two_limit space");
    int n = j.at("terms").get<int>();
    return std::make_shared<CountableSpace>(std::vector<CountableSpace::Cluster>{{0.0, 1.0, 1, n}, {1.0, 1.0, 1, n}});
  }
  if (kind == "countable") {
    check_keys(j, {"kind", "clusters"}, "countable space");
    std::vector<CountableSpace::Cluster> cl;
    for (const auto& c : j.at("clusters")) {
      check_keys(c, {"anchor", "scale", "depth", "terms"}, "cluster");
      cl.push_back({get_or(c, "anchor", 0.0), get_or(c, "scale", 1.0), get_or(c, "depth", 1), get_or(c, "terms", 100)});
    }
    return std::make_shared<CountableSpace>(std::move(cl));
  }
  if (kind == "uniform_tree") {
    check_keys(j, {"kind", "eps", "branching", "lcd_b", "depth", "cap"}, "uniform_tree space");
    double eps = get_or(j, "eps", 0.5);
    if (j.contains("branching")) return std::make_shared<UniformTreeSpace>(eps, j.at("branching").get<std::vector<std::uint64_t>>());
    if (j.contains("lcd_b"))
      return std::make_shared<UniformTreeSpace>(UniformTreeSpace::with_lcd(
          eps, j.at("lcd_b").get<double>(), j.at("depth").get<int>(), get_or(j, "cap", std::uint64_t{1} << 62)));
    throw ValidationError("uniform_tree needs \"branching\" or \"lcd_b\" with \"depth\"");
  }
  if (kind == "hedgehog") {
    check_keys(j, {"kind", "spines", "length"}, "hedgehog space");
    return std::make_shared<HedgehogSpace>(j.at("spines").get<std::int64_t>(), get_or(j, "length", 0.5));
  }
  throw ValidationError("unknown space kind '" + kind + "'");
}

}  // namespace

SpacePtr make_space(const nlohmann::json& descriptor) {
  try {
    return build(descriptor);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed space descriptor: ") + e.what());
  }
}

PointSet point_set_from_json(const MetricSpace& space, const nlohmann::json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "all") return PointSet::whole();
    if (s == "empty") return PointSet::none();
    throw ValidationError("unknown point set '" + s + "'");
  }
  if (j.is_object() && j.contains("points")) {
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(space.point_from_json(p));
    return PointSet::of(std::move(pts));
  }
  if (j.is_object() && j.contains("ball")) {
    const auto& b = j.at("ball");
    return PointSet::closed_ball(space.point_from_json(b.at("center")), b.at("radius").get<double>());
  }
  throw ValidationError("point set must be \"all\", \"empty\", {\"points\": [...]} or {\"ball\": {...}}");
}

nlohmann::json point_set_to_json(const MetricSpace& space, const PointSet& s) {
  switch (s.kind) {
    case PointSet::Kind::all: return "all";
    case PointSet::Kind::empty: return "empty";
    case PointSet::Kind::points: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& p : s.points) arr.push_back(space.point_to_json(p));
      return {{"points", arr}};
    }
    case PointSet::Kind::ball:
      return {{"ball", {{"center", space.point_to_json(s.ball.center)}, {"radius", s.ball.radius}}}};
  }
  return nullptr;
}

}  // namespace liplab
