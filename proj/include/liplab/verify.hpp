#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/instances.hpp"

namespace liplab {

struct FiniteMeasure {
  std::vector<double> p;
  std::vector<std::string> labels;  // optional, one per atom

  static FiniteMeasure bernoulli(double q) { return FiniteMeasure{{1.0 - q, q}, {"0", "1"}}; }
  // Nonnegative, sums to 1 within 1e-12.
  void validate() const;
};

// KL(p; q) = sum p ln(p/q) with 0 ln 0 = 0; +inf when p charges a q-null atom.
double kl_divergence(const FiniteMeasure& p, const FiniteMeasure& q);
// KL(a; b) between Bernoulli(a) and Bernoulli(b).
double kl_bernoulli(double a, double b);

// Joint law on atoms^coords, coordinate 0 most significant.
struct ProductMeasure {
  std::size_t atoms = 2;
  std::size_t coords = 1;
  std::vector<double> p;
};

struct ChainCheck {
  double lhs = 0.0;  // KL(p; q)
  double rhs = 0.0;  // sum_i KL(p^i; q^i | omega^{i-1})
  double residual = 0.0;
};

ChainCheck kl_chain_check(const ProductMeasure& p, const ProductMeasure& q, std::size_t enumeration_cap = 1u << 16);

struct LemmaReport {
  std::string lemma;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  double min_margin = 0.0;  // min over cases of rhs - lhs
  nlohmann::json worst;
  nlohmann::json to_json() const;
};

// Checks the Bernoulli bound KL(y-e; y) < e^2 / y(1-y), the distinguishing
// bound q(E) >= p(E) exp(-(KL + 1/e) / p(E)) and the reverse-Pinsker bound
// KL(p; q) < delta^2 on grids of side `side` (side^3 cells for each of the
// last two, side^3 (y, e) pairs for the first).
std::vector<LemmaReport> kl_bounds_report(int side = 10);

struct EnsembleSpec {
  std::vector<FiniteMeasure> measures;            // P_0 .. P_k over one atom set
  std::vector<std::vector<std::size_t>> subsets;  // S_1 .. S_k (strategy ids)
  std::vector<std::vector<double>> means;         // mu_1 .. mu_k over every strategy
  double eps = 0.0;
  double delta = 0.25;
  std::size_t horizon = 1;  // product of independent rounds
};

struct EnsembleReport {
  bool structural = true;
  bool property1 = false;
  bool property2 = false;
  double min_ratio = 0.0;  // extremes of P_0(E)/P_i(E) over all events
  double max_ratio = 0.0;
  double margin1 = 0.0;    // distance of the extremes inside (1-delta, 1+delta)
  double margin2 = 0.0;    // min gap - eps
  std::vector<double> kl;  // KL(P_i; P_0) per i
  std::string message;
  bool pass() const { return structural && property1 && property2; }
  nlohmann::json to_json() const;
};

EnsembleReport ensemble_check(const EnsembleSpec& ensemble);

// Two sibling balls with lineage bias `bias` on one of them, one round, signs
// restricted to the two siblings (4 atoms). Strategies: the two plateau
// points and a point outside both; plateau gain bias * r / 2.
EnsembleSpec sibling_ensemble(double bias, double r, double delta);

// Largest integer t with t < ln(17k) / (2 delta^2).
std::uint64_t lb_time_threshold(double eps, double delta, std::size_t k);

struct LogtKlReport {
  std::size_t traces = 0;
  double mean_lhs = 0.0;       // per-trace sum of KL(mu_0(x_s); mu_i(x_s)), averaged
  double mean_rhs = 0.0;       // (1/3) r_i^2 N_i(t), averaged
  double mean_hits = 0.0;      // N_i(t) averaged
  std::size_t pathwise_violations = 0;
  double min_margin = 0.0;
  bool pass() const { return pathwise_violations == 0 && mean_lhs <= mean_rhs; }
  nlohmann::json to_json() const;
};

LogtKlReport logt_kl_check(const LogtInstance& mu0, const LogtInstance& mui, const std::vector<std::vector<Point>>& bets);

struct LipschitzCertificate {
  std::size_t pairs = 0;
  std::size_t rounds = 0;
  bool samples_checked = false;  // false when draws are not Lipschitz by construction
  double max_violation = 0.0;    // max of |pi(x) - pi(y)| - d(x, y)
  double max_mean_violation = 0.0;
  double max_range_excess = 0.0;  // distance of any value outside [0, 1]
  double tolerance = 1e-9;
  nlohmann::json worst;
  bool pass() const {
    return max_violation <= tolerance && max_mean_violation <= tolerance && max_range_excess <= tolerance;
  }
  nlohmann::json to_json() const;
};

LipschitzCertificate lipschitz_certify(const PayoffInstance& inst, std::size_t pairs, std::size_t rounds, Rng& rng,
                                       double tolerance = 1e-9);

}  // namespace liplab
