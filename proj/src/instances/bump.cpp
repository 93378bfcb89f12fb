#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"

namespace liplab {

BumpInstance::BumpInstance(SpacePtr space, Options opt) : PayoffInstance(std::move(space)), opt_(opt) {
  if (!(opt_.b > 0.0)) throw ValidationError("bump dimension b must be positive");
  if (opt_.depth < 1 || opt_.depth > 8) throw ValidationError("bump depth must be in [1, 8]");
  if (opt_.count_cap < 2) throw ValidationError("bump count_cap must be >= 2");
  const auto& s = *space_;
  if (!s.capabilities().packable) throw CapabilityError("bump instances need a space with a packing oracle");

  Point root = s.kind() == SpaceKind::interval ? Point::real(0.5) : s.canonical_least();
  nodes_.push_back(Node{root, 0.25, 0, {}, -1, true});
  radii_.push_back(0.25);
  counts_.push_back(1);
  bool capped = false;
  Rng rng = Rng(opt_.seed).split("bump");

  std::vector<std::size_t> frontier{0};
  for (int i = 1; i <= opt_.depth; ++i) {
    double r_cand = radii_.back() / 5.0;
    double want = std::pow(2.0, std::pow(r_cand, -opt_.b));
    std::size_t n = opt_.count_cap;
    if (std::isfinite(want) && want < static_cast<double>(opt_.count_cap)) n = static_cast<std::size_t>(std::ceil(want));
    else capped = true;
    n = std::max<std::size_t>(n, 2);

    std::vector<Packing> packs;
    double r = r_cand;
    for (auto p : frontier) {
      packs.push_back(s.pack(nodes_[p].center, nodes_[p].radius / 2.0, n, r_cand));
      r = std::min(r, packs.back().radius);
    }
    std::vector<std::size_t> next;
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      auto p = frontier[f];
      for (auto& c : packs[f].centers) {
        nodes_[p].children.push_back(nodes_.size());
        next.push_back(nodes_.size());
        nodes_.push_back(Node{c, r, i, {}, -1, false});
      }
      if (nodes_[p].in_q) {
        auto& kids = nodes_[p].children;
        auto m = kids[static_cast<std::size_t>(rng.below(kids.size()))];
        nodes_[p].marked = static_cast<std::int64_t>(m);
        nodes_[m].in_q = true;
      }
    }
    radii_.push_back(r);
    counts_.push_back(n);
    frontier = std::move(next);
  }
  if (capped) warn("ball counts capped at " + std::to_string(opt_.count_cap) + " (2^{r^-b} is infeasible)");

  std::size_t q = 0;
  sup_ = 0.5;
  while (nodes_[q].marked >= 0) {
    q = static_cast<std::size_t>(nodes_[q].marked);
    sup_ += nodes_[q].radius / 6.0;
  }
  argmax_ = nodes_[q].center;
}

template <class SignFn>
double BumpInstance::evaluate(const Point& x, SignFn&& sign) const {
  double v = 0.5;
  std::size_t cur = 0;
  for (;;) {
    std::int64_t hit = -1;
    double d = 0.0;
    for (auto c : nodes_[cur].children) {
      d = space_->distance(x, nodes_[c].center);
      if (d < nodes_[c].radius) {
        hit = static_cast<std::int64_t>(c);
        break;
      }
    }
    if (hit < 0) return v;
    cur = static_cast<std::size_t>(hit);
    const auto& n = nodes_[cur];
    v += sign(cur, n) * std::min(n.radius - d, n.radius / 2.0);
  }
}

double BumpInstance::mean(const Point& x) const {
  return evaluate(x, [](std::size_t, const Node& n) { return n.in_q ? 1.0 / 3.0 : 0.0; });
}

double BumpInstance::realize(std::uint64_t key, const Point& x) const {
  return evaluate(x, [key](std::size_t id, const Node& n) {
    return static_cast<double>(keyed_sign(key, id, n.in_q ? 1.0 / 3.0 : 0.0));
  });
}

Point BumpInstance::probe(Rng& rng) const {
  if (rng.bernoulli(0.2)) return space_->sample(rng);
  const auto& n = nodes_[1 + static_cast<std::size_t>(rng.below(nodes_.size() - 1))];
  if (rng.bernoulli(0.3)) return n.center;
  try {
    return space_->perfect_neighbor(n.center, n.radius * (0.5 + 3.5 * rng.uniform()));
  } catch (const ResolutionError&) {
    return n.center;
  }
}

nlohmann::json BumpInstance::describe() const {
  auto j = base_json();
  j["b"] = opt_.b;
  j["depth"] = opt_.depth;
  j["seed"] = opt_.seed;
  j["count_cap"] = opt_.count_cap;
  j["radii"] = radii_;
  j["counts"] = counts_;
  nlohmann::json q = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].in_q && i > 0) q.push_back(space_->point_to_json(nodes_[i].center));
  j["q_centers"] = q;
  return j;
}

}  // namespace liplab
