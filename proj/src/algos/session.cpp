#include "liplab/errors.hpp"
#include "liplab/session.hpp"

namespace liplab {

FeedbackMode parse_mode(const std::string& s) {
  if (s == "bandit") return FeedbackMode::bandit;
  if (s == "double") return FeedbackMode::double_feedback;
  if (s == "full") return FeedbackMode::full;
  throw ValidationError("mode must be bandit, double or full, got '" + s + "'");
}

std::string to_string(FeedbackMode m) {
  switch (m) {
    case FeedbackMode::bandit: return "bandit";
    case FeedbackMode::double_feedback: return "double";
    case FeedbackMode::full: return "full";
  }
  return "?";
}

std::span<const Point> observed_points(FeedbackMode mode, const Action& a) {
  if (mode == FeedbackMode::bandit) return {&a.bet, 1};
  return a.queries;
}

const Action& AlgorithmSession::choose() {
  if (pending_) throw ProtocolError(name() + ": choose() called twice without observe()");
  current_ = next_action();
  if (mode_ == FeedbackMode::double_feedback && current_.queries.size() != 1)
    throw ProtocolError(name() + ": double feedback needs exactly one peek");
  pending_ = true;
  return current_;
}

void AlgorithmSession::observe(std::span<const double> values) {
  if (!pending_) throw ProtocolError(name() + ": observe() called before choose()");
  auto want = observed_points(mode_, current_).size();
  if (values.size() != want)
    throw ProtocolError(name() + ": expected " + std::to_string(want) + " feedback values, got " + std::to_string(values.size()));
  pending_ = false;
  ++t_;
  absorb(current_, values);
}

}  // namespace liplab
