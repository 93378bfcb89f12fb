#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/ball_tree.hpp"
#include "liplab/metric_space.hpp"

namespace liplab {

enum class NoiseModel { bernoulli, none };
NoiseModel parse_noise(const std::string& s);
std::string to_string(NoiseModel n);

class PayoffInstance;
using InstancePtr = std::shared_ptr<const PayoffInstance>;

// One draw pi_t of the payoff function. Evaluations are coherent: the same
// point always gives the same value for the same key. Must not outlive the
// instance it came from.
class PayoffSample {
 public:
  PayoffSample(const PayoffInstance* inst, std::uint64_t key) : inst_(inst), key_(key) {}
  double operator()(const Point& x) const;
  std::uint64_t key() const { return key_; }

 private:
  const PayoffInstance* inst_;
  std::uint64_t key_;
};

class PayoffInstance {
 public:
  explicit PayoffInstance(SpacePtr space);
  virtual ~PayoffInstance() = default;

  const MetricSpace& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }

  virtual std::string kind() const = 0;
  virtual double mean(const Point& x) const = 0;
  // Analytic supremum of the mean and a point attaining it.
  virtual double sup_mean() const = 0;
  virtual Point argmax() const = 0;
  virtual double realize(std::uint64_t key, const Point& x) const = 0;
  // Every draw pi_t is 1-Lipschitz (not just the mean).
  virtual bool uniformly_lipschitz() const = 0;
  virtual nlohmann::json describe() const = 0;
  // Points near the instance's structure, for certification and probes.
  virtual Point probe(Rng& rng) const { return space_->sample(rng); }

  PayoffSample sample(std::uint64_t key) const { return PayoffSample(this, key); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool guarantee_breaking() const { return !warnings_.empty(); }

 protected:
  void warn(std::string w) { warnings_.push_back(std::move(w)); }
  nlohmann::json base_json() const;

  SpacePtr space_;
  std::vector<std::string> warnings_;
};

// Random sign with E[sign] = bias, a pure function of (key, id).
int keyed_sign(std::uint64_t key, std::uint64_t id, double bias);

// mu(x) = top - slope * d(x, peak); payoffs Bernoulli(mu) or exactly mu.
class PeakInstance final : public PayoffInstance {
 public:
  PeakInstance(SpacePtr space, Point peak, double slope, double top, NoiseModel noise, bool unchecked = false);
  std::string kind() const override { return "peak"; }
  double mean(const Point& x) const override;
  double sup_mean() const override { return top_; }
  Point argmax() const override { return peak_; }
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return noise_ == NoiseModel::none && slope_ <= 1.0; }
  nlohmann::json describe() const override;

 private:
  Point peak_;
  double slope_, top_;
  NoiseModel noise_;
};

// Explicit means on the points of a finite space.
class TableInstance final : public PayoffInstance {
 public:
  TableInstance(SpacePtr space, std::vector<double> means, NoiseModel noise);
  std::string kind() const override { return "table"; }
  double mean(const Point& x) const override { return means_.at(static_cast<std::size_t>(x.index)); }
  double sup_mean() const override;
  Point argmax() const override;
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return noise_ == NoiseModel::none; }
  nlohmann::json describe() const override;

 private:
  std::vector<double> means_;
  NoiseModel noise_;
};

// pi = 1/2 + sum over ball-tree nodes w of sign(w) * needle_w, signs fair
// except on lineage nodes at depth i where P(+1) = (1 + delta_i)/2.
class LineageInstance final : public PayoffInstance {
 public:
  struct Options {
    int depth = 12;
    double gamma = 0.25;          // g(n) = n^gamma
    std::uint64_t seed = 0;       // draws the lineage
    std::vector<double> biases;   // desk-scale delta_i override (index 0 = depth 1)
    std::vector<int> choice;      // explicit lineage child per node (-1 none, 0, 1)
  };

  LineageInstance(SpacePtr space, Options opt);
  LineageInstance(std::shared_ptr<const BallTree> tree, Options opt);

  std::string kind() const override { return "lineage"; }
  double mean(const Point& x) const override;
  double sup_mean() const override { return sup_; }
  Point argmax() const override { return argmax_; }
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return true; }
  nlohmann::json describe() const override;
  Point probe(Rng& rng) const override;

  const BallTree& tree() const { return *tree_; }
  std::shared_ptr<const BallTree> tree_ptr() const { return tree_; }
  double bias(int depth) const { return delta_.at(static_cast<std::size_t>(depth)); }
  double n_threshold(int depth) const { return n_.at(static_cast<std::size_t>(depth)); }
  const std::vector<int>& choice() const { return choice_; }
  bool in_lineage(std::size_t node) const;
  // Sum over depths beyond the truncation of 2^{-i-1}.
  double tail_bound() const { return std::ldexp(1.0, -tree_->depth() - 1); }
  // Same tree and biases with a different lineage.
  std::shared_ptr<const LineageInstance> with_choice(std::vector<int> choice) const;

 private:
  void init(Options opt);
  template <class SignFn>
  double evaluate(const Point& x, SignFn&& sign) const;

  std::shared_ptr<const BallTree> tree_;
  Options opt_;
  std::vector<int> choice_;
  std::vector<double> delta_;  // by depth, delta_[0] unused
  std::vector<double> n_;
  double sup_ = 0.5;
  Point argmax_;
};

// Member i of the log(t) ensemble around a sequence x_j -> x*:
//   mu_0(x) = 1/2 - d(x, x*)/8,  mu_i = mu_0 + 3/4 max(0, r_i/3 - d(x, x_i)),
// with r_j = d(x_j, x*) and r_{j+1} < r_j / 2.
class LogtInstance final : public PayoffInstance {
 public:
  LogtInstance(SpacePtr space, std::vector<Point> sequence, Point limit, int index, NoiseModel noise = NoiseModel::bernoulli);
  std::string kind() const override { return "logt"; }
  double mean(const Point& x) const override;
  double sup_mean() const override;
  Point argmax() const override;
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return noise_ == NoiseModel::none; }
  nlohmann::json describe() const override;
  Point probe(Rng& rng) const override;

  int index() const { return index_; }
  double radius(int j) const { return radii_.at(static_cast<std::size_t>(j - 1)); }
  const Point& center(int j) const { return seq_.at(static_cast<std::size_t>(j - 1)); }
  // Is x in B_j = B(x_j, r_j / 3)?
  bool in_bump(int j, const Point& x) const;

 private:
  std::vector<Point> seq_;
  Point limit_;
  int index_;
  NoiseModel noise_;
  std::vector<double> radii_;
};

std::vector<std::shared_ptr<const LogtInstance>> make_logt_ensemble(SpacePtr space, std::vector<Point> sequence, Point limit,
                                                                     NoiseModel noise = NoiseModel::bernoulli);

// Disjoint balls B(s_i, r) grouped into consecutive index intervals I_k; one
// j_k per interval has sign fixed to +1, all others are fair:
//   pi = 1/2 + sum_i sigma_i G_i,  G_i = min(r - d(x, s_i), r - r_k),  r_k = r / 2^{k+1}.
class WedgeInstance final : public PayoffInstance {
 public:
  struct Options {
    std::vector<Point> centers;
    double radius = 0.25;
    std::vector<int> t_schedule{1, 2, 3, 4};
    std::vector<std::size_t> sizes;  // desk-scale override of 4^{t_k}
    std::uint64_t seed = 0;
  };

  WedgeInstance(SpacePtr space, Options opt);
  std::string kind() const override { return "wedge"; }
  double mean(const Point& x) const override;
  double sup_mean() const override;
  Point argmax() const override;
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return true; }
  nlohmann::json describe() const override;
  Point probe(Rng& rng) const override;

  std::size_t intervals() const { return starts_.size(); }
  std::size_t chosen(std::size_t k) const { return j_.at(k); }
  const Point& center(std::size_t i) const { return opt_.centers.at(i); }
  double inner_radius(std::size_t k) const { return opt_.radius / std::ldexp(1.0, static_cast<int>(k) + 2); }
  std::size_t interval_of(std::size_t i) const;

 private:
  std::int64_t ball_of(const Point& x, double* dist) const;

  Options opt_;
  std::vector<std::size_t> starts_;  // first ball index of each interval
  std::vector<std::size_t> j_;
  std::vector<bool> fixed_;
};

// Nested bump families: depth-i balls of radius r_i packed into the half
// balls of depth i-1, r_0 = 1/4 (the container, no bump), G_B = min(r - d, r/2).
// Q is a chain: each Q node marks one child, E[sigma] = 1/3 on Q, other signs are fair.
class BumpInstance final : public PayoffInstance {
 public:
  struct Options {
    double b = 1.0;
    int depth = 3;
    std::uint64_t seed = 0;
    std::size_t count_cap = 8;
  };
  struct Node {
    Point center;
    double radius = 0.0;
    int depth = 0;
    std::vector<std::size_t> children;
    std::int64_t marked = -1;  // the child in Q
    bool in_q = false;
  };

  BumpInstance(SpacePtr space, Options opt);
  std::string kind() const override { return "bump"; }
  double mean(const Point& x) const override;
  double sup_mean() const override { return sup_; }
  Point argmax() const override { return argmax_; }
  double realize(std::uint64_t key, const Point& x) const override;
  bool uniformly_lipschitz() const override { return true; }
  nlohmann::json describe() const override;
  Point probe(Rng& rng) const override;

  const std::vector<Node>& nodes() const { return nodes_; }
  double level_radius(int i) const { return radii_.at(static_cast<std::size_t>(i)); }
  std::size_t level_count(int i) const { return counts_.at(static_cast<std::size_t>(i)); }

 private:
  template <class SignFn>
  double evaluate(const Point& x, SignFn&& sign) const;

  Options opt_;
  std::vector<Node> nodes_;
  std::vector<double> radii_;
  std::vector<std::size_t> counts_;
  double sup_ = 0.5;
  Point argmax_;
};

// Builds an instance from {"kind": ..., ...} over an existing space.
InstancePtr make_instance(SpacePtr space, const nlohmann::json& descriptor);

}  // namespace liplab
