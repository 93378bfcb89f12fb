#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "liplab/metric_space.hpp"

namespace liplab {

enum class FeedbackMode { bandit, double_feedback, full };

FeedbackMode parse_mode(const std::string& s);
std::string to_string(FeedbackMode m);

// The bet collects the reward. Bandit feedback observes the bet; double
// feedback observes exactly one peek; full feedback observes every query.
struct Action {
  Point bet;
  std::vector<Point> queries;
};

// Points whose payoffs are revealed after `a` under `mode`.
std::span<const Point> observed_points(FeedbackMode mode, const Action& a);

// Step API shared by every algorithm: choose() and observe() strictly
// alternate, and observe() takes the payoffs at observed_points(choose()).
class AlgorithmSession {
 public:
  AlgorithmSession(SpacePtr space, FeedbackMode mode) : space_(std::move(space)), mode_(mode) {}
  virtual ~AlgorithmSession() = default;
  AlgorithmSession(const AlgorithmSession&) = delete;
  AlgorithmSession& operator=(const AlgorithmSession&) = delete;

  const Action& choose();
  void observe(std::span<const double> values);

  FeedbackMode mode() const { return mode_; }
  std::uint64_t t() const { return t_; }
  const MetricSpace& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }
  bool awaiting_feedback() const { return pending_; }

  virtual std::string name() const = 0;
  virtual nlohmann::json params() const = 0;
  // Per-phase bookkeeping and flags accumulated so far.
  virtual nlohmann::json report() const { return nlohmann::json::object(); }

 protected:
  virtual Action next_action() = 0;
  virtual void absorb(const Action& a, std::span<const double> values) = 0;

  SpacePtr space_;

 private:
  FeedbackMode mode_;
  std::uint64_t t_ = 0;
  bool pending_ = false;
  Action current_;
};

using SessionPtr = std::unique_ptr<AlgorithmSession>;

// Builds a session from {"name": ..., ...}; `seed` keys any internal randomness.
SessionPtr make_session(SpacePtr space, const nlohmann::json& descriptor, std::uint64_t seed = 0);
std::vector<std::string> algorithm_names();

}  // namespace liplab
