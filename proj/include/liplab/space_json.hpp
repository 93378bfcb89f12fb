#pragma once

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "liplab/metric_space.hpp"

namespace liplab {

// Builds a space from a descriptor such as {"kind": "sequence", "terms": 100}.
SpacePtr make_space(const nlohmann::json& descriptor);

PointSet point_set_from_json(const MetricSpace& space, const nlohmann::json& j);
nlohmann::json point_set_to_json(const MetricSpace& space, const PointSet& s);

// Rejects keys outside `allowed` (catches misspelled descriptor fields).
void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& what);

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace liplab
