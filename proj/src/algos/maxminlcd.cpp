#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/expert_algos.hpp"

namespace liplab {

namespace {

std::size_t argbest(const MetricSpace& s, const std::vector<Point>& pts, const std::vector<double>& sums) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (sums[i] > sums[best] || (sums[i] == sums[best] && s.canonical_less(pts[i], pts[best]))) best = i;
  return best;
}

}  // namespace

MaxMinLcdExperts::MaxMinLcdExperts(std::shared_ptr<const DepthStructure> decomposition, Options opt)
    : AlgorithmSession(decomposition ? decomposition->space_ptr() : nullptr, FeedbackMode::full), dec_(std::move(decomposition)),
      opt_(opt) {
  if (!dec_) throw ValidationError("maxminlcd needs a decomposition");
  if (!(opt_.b > 0.0)) throw ValidationError("maxminlcd needs b > 0");
  if (opt_.uniform && opt_.b < 2.0) throw ValidationError("the uniform variant needs b >= 2");
  if (opt_.net_cap < 1 || opt_.quota_cap < 1) throw ValidationError("net_cap and quota_cap must be >= 1");
  bet_ = space_->canonical_least();
}

double MaxMinLcdExperts::r_T(double T, std::size_t net_size) {
  return std::sqrt(8.0 * std::log(T * static_cast<double>(net_size)) / T);
}

double MaxMinLcdExperts::phase_delta(double T) const { return std::pow(T, opt_.uniform ? -1.0 / opt_.b : -1.0 / (opt_.b + 2.0)); }

void MaxMinLcdExperts::close_phase() {
  auto& ph = phases_.back();
  const auto& pool = active_.empty() ? net_ : active_;
  const auto& sums = active_.empty() ? net_sums_ : active_sums_;
  bet_ = pool[argbest(*space_, pool, sums)];
  ph.best = bet_;
  double top = *std::max_element(net_sums_.begin(), net_sums_.end());
  double len = static_cast<double>(std::max<std::uint64_t>(played_in_phase_, 1));
  prev_gap_.clear();
  for (double s : net_sums_) prev_gap_.push_back((top - s) / len);
  prev_net_ = net_;
  prev_r_T_ = ph.r_T;
  prev_radius_ = net_radius_;
}

void MaxMinLcdExperts::start_phase() {
  if (!phases_.empty()) close_phase();
  int i = static_cast<int>(phases_.size());
  if (i >= 63) throw ValidationError("maxminlcd phase index overflow");
  std::uint64_t T = std::uint64_t{1} << i;
  const double Td = static_cast<double>(T);

  // finest 2^-j net within the size limit
  double sq = std::sqrt(Td);
  std::size_t limit = sq >= 62.0 ? opt_.net_cap : std::min(opt_.net_cap, static_cast<std::size_t>(std::floor(std::exp2(sq))));
  PhaseInfo ph{};
  ph.index = i;
  ph.length = T;
  ph.j = -1;
  for (int j = 0; j <= 52; ++j) {
    Covering c;
    try {
      c = cover_to_delta(*space_, std::ldexp(1.0, -j), limit);
    } catch (const ResolutionError&) {
      break;
    }
    if (c.points.size() > limit) break;
    net_ = std::move(c.points);
    net_radius_ = std::ldexp(1.0, -j);
    ph.j = j;
    if (c.delta == 0.0) break;
  }
  if (ph.j < 0) {
    net_ = cover_to_delta(*space_, 1.0).points;
    net_radius_ = 1.0;
    ph.j = 0;
    ph.net_flag = true;
  }
  net_sums_.assign(net_.size(), 0.0);
  ph.net_size = net_.size();
  ph.r_T = r_T(Td, net_.size());
  ph.delta = phase_delta(Td);
  ph.log2_quota = log2_quota(ph.delta);
  std::size_t quota = opt_.quota_cap;
  if (ph.log2_quota < std::log2(static_cast<double>(opt_.quota_cap))) {
    quota = static_cast<std::size_t>(std::ceil(std::exp2(ph.log2_quota)));
  } else if (ph.log2_quota > std::log2(static_cast<double>(opt_.quota_cap))) {
    ph.quota_flag = true;
  }

  std::optional<Point> anchor;
  std::vector<Ball> exclude;
  ph.lambda = 0;
  if (!prev_net_.empty()) {
    std::vector<Ball> near;
    for (std::size_t x = 0; x < prev_net_.size(); ++x) {
      if (prev_gap_[x] < prev_radius_) near.push_back(Ball::open(prev_net_[x], prev_radius_));
      if (prev_gap_[x] > 2.0 * (prev_r_T_ + prev_radius_)) exclude.push_back(Ball::open(prev_net_[x], prev_radius_));
    }
    auto d = dec_->depth_oracle(near);
    anchor = d.point;
    ph.lambda = d.level;
    ph.depth_point = d.point;
  }
  ph.excluded = exclude.size();
  bool truncated = false;
  active_ = dec_->build_net(anchor, exclude, ph.delta, quota, &truncated);
  if (truncated && quota == opt_.quota_cap) ph.quota_flag = true;
  active_sums_.assign(active_.size(), 0.0);
  ph.active_size = active_.size();
  phases_.push_back(ph);
  played_in_phase_ = 0;
}

Action MaxMinLcdExperts::next_action() {
  if (phases_.empty() || played_in_phase_ >= phases_.back().length) start_phase();
  Action a{bet_, net_};
  a.queries.insert(a.queries.end(), active_.begin(), active_.end());
  return a;
}

void MaxMinLcdExperts::absorb(const Action&, std::span<const double> values) {
  for (std::size_t i = 0; i < net_.size(); ++i) net_sums_[i] += values[i];
  for (std::size_t i = 0; i < active_.size(); ++i) active_sums_[i] += values[net_.size() + i];
  ++played_in_phase_;
}

nlohmann::json MaxMinLcdExperts::params() const {
  return {{"name", "maxminlcd"}, {"b", opt_.b}, {"uniform", opt_.uniform}, {"net_cap", opt_.net_cap},
          {"quota_cap", opt_.quota_cap}, {"decomposition", dec_->describe()}};
}

nlohmann::json MaxMinLcdExperts::report() const {
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& p : phases_) {
    nlohmann::json j{{"index", p.index}, {"length", p.length}, {"j", p.j}, {"net_size", p.net_size},
                     {"r_T", p.r_T}, {"delta", p.delta}, {"log2_quota", p.log2_quota}, {"active_size", p.active_size},
                     {"lambda", p.lambda}, {"excluded", p.excluded}, {"net_flag", p.net_flag}, {"quota_flag", p.quota_flag}};
    j["depth_point"] = p.depth_point ? space_->point_to_json(*p.depth_point) : nlohmann::json(nullptr);
    j["best"] = p.best ? space_->point_to_json(*p.best) : nlohmann::json(nullptr);
    ph.push_back(j);
  }
  return {{"phases", ph}};
}

}  // namespace liplab
