#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/metric_space.hpp"

namespace liplab {

enum class DimensionMode { cov, lcd };

DimensionMode parse_dimension_mode(const std::string& s);

struct DimensionEstimate {
  double value = 0.0;
  std::vector<double> deltas;      // coarse to fine
  std::vector<double> log_counts;  // ln N_delta
  std::vector<double> slopes;      // finite differences between consecutive grid points
  std::size_t tail_start = 0;      // first slope index in the tail
  bool exact = true;               // every N_delta exact (not a bound)
  bool capped = false;             // some N_delta hit a structural cap
  nlohmann::json to_json() const;
};

// Max over the finer half of the grid of the finite-difference slope of
// ln N_delta (cov) or ln ln N_delta (lcd) against ln(1/delta).
DimensionEstimate estimate_dimension(const MetricSpace& space, DimensionMode mode, std::vector<double> grid);

// 2^-lo, 2^-(lo+1), ..., 2^-hi
std::vector<double> dyadic_grid(int lo, int hi);

}  // namespace liplab
