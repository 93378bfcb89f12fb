#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/instances.hpp"

namespace liplab {

namespace {

// Least n such that every n' >= n has n'^gamma < c * sqrt(n'), c = r*/(8i).
double threshold_n(double gamma, double c) {
  double x = std::pow(c, -1.0 / (0.5 - gamma));
  double n = std::floor(x) + 1.0;
  if (n < 1e15) {
    auto ok = [&](double m) { return std::pow(m, gamma) < c * std::sqrt(m); };
    while (n > 1.0 && ok(n - 1.0)) n -= 1.0;
    while (!ok(n)) n += 1.0;
  }
  return n;
}

}  // namespace

LineageInstance::LineageInstance(SpacePtr space, Options opt)
    : LineageInstance(std::make_shared<const BallTree>(BallTree::build(std::move(space), opt.depth)), std::move(opt)) {}

LineageInstance::LineageInstance(std::shared_ptr<const BallTree> tree, Options opt)
    : PayoffInstance(tree->space_ptr()), tree_(std::move(tree)) {
  init(std::move(opt));
}

void LineageInstance::init(Options opt) {
  opt_ = std::move(opt);
  const int D = tree_->depth();
  if (D < 1) throw ValidationError("lineage instance needs ball-tree depth >= 1");
  if (!(opt_.gamma > 0.0 && opt_.gamma < 0.5)) throw ValidationError("gamma must be in (0, 1/2)");
  delta_.assign(static_cast<std::size_t>(D) + 1, 0.0);
  n_.assign(static_cast<std::size_t>(D) + 1, 0.0);
  for (int i = 1; i <= D; ++i) {
    double c = tree_->min_radius(i) / (8.0 * i);
    n_[static_cast<std::size_t>(i)] = threshold_n(opt_.gamma, c);
    delta_[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(n_[static_cast<std::size_t>(i)]);
  }
  if (!opt_.biases.empty()) {
    if (opt_.biases.size() != static_cast<std::size_t>(D)) throw ValidationError("bias override needs one value per depth");
    for (int i = 1; i <= D; ++i) {
      double b = opt_.biases[static_cast<std::size_t>(i - 1)];
      if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("biases must lie in [0,1]");
      delta_[static_cast<std::size_t>(i)] = b;
    }
    warn("per-depth biases overridden (desk scale)");
  }
  const std::size_t internal = tree_->nodes().size() / 2;
  if (!opt_.choice.empty()) {
    if (opt_.choice.size() != internal) throw ValidationError("lineage choice needs one entry per internal node");
    for (int c : opt_.choice)
      if (c < -1 || c > 1) throw ValidationError("lineage choice entries must be -1, 0 or 1");
    choice_ = opt_.choice;
  } else {
    Rng rng = Rng(opt_.seed).split("lineage");
    choice_.resize(internal);
    for (auto& c : choice_) c = static_cast<int>(rng.below(2));
  }
  // best depth-D centre: each node carries delta * r / 2 when on the lineage
  const auto& nodes = tree_->nodes();
  std::vector<double> acc(nodes.size(), 0.5);
  sup_ = -1.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto p = static_cast<std::size_t>(nodes[i].parent);
    acc[i] = acc[p] + (in_lineage(i) ? delta_[static_cast<std::size_t>(nodes[i].depth)] * nodes[i].radius / 2.0 : 0.0);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (tree_->is_leaf(i) && acc[i] > sup_) {
      sup_ = acc[i];
      argmax_ = nodes[i].center;
    }
  }
}

bool LineageInstance::in_lineage(std::size_t node) const {
  if (node == 0) return false;
  std::size_t parent = (node - 1) / 2;
  int which = static_cast<int>((node - 1) % 2);
  return choice_[parent] == which;
}

template <class SignFn>
double LineageInstance::evaluate(const Point& x, SignFn&& sign) const {
  double v = 0.5;
  std::size_t node = 0;
  while (true) {
    std::int64_t c = tree_->child_containing(node, x);
    if (c < 0) break;
    node = static_cast<std::size_t>(c);
    const auto& n = tree_->node(node);
    v += sign(node, n.depth) * needle(*space_, n.center, n.radius, x);
  }
  return v;
}

double LineageInstance::mean(const Point& x) const {
  return evaluate(x, [&](std::size_t node, int depth) { return in_lineage(node) ? delta_[static_cast<std::size_t>(depth)] : 0.0; });
}

double LineageInstance::realize(std::uint64_t key, const Point& x) const {
  return evaluate(x, [&](std::size_t node, int depth) {
    double b = in_lineage(node) ? delta_[static_cast<std::size_t>(depth)] : 0.0;
    return static_cast<double>(keyed_sign(key, node, b));
  });
}

std::shared_ptr<const LineageInstance> LineageInstance::with_choice(std::vector<int> choice) const {
  Options o = opt_;
  o.choice = std::move(choice);
  return std::make_shared<const LineageInstance>(tree_, std::move(o));
}

Point LineageInstance::probe(Rng& rng) const {
  const auto& nodes = tree_->nodes();
  const auto& n = nodes[static_cast<std::size_t>(rng.below(nodes.size()))];
  if (space_->kind() == SpaceKind::interval) {
    double x = n.center.coord + (2.0 * rng.uniform() - 1.0) * 1.2 * n.radius;
    return Point::real(std::clamp(x, 0.0, 1.0));
  }
  if (rng.bernoulli(0.5)) return n.center;
  if (rng.bernoulli(0.5)) return space_->sample(rng);
  try {
    return space_->perfect_neighbor(n.center, n.radius);
  } catch (const ResolutionError&) {
    return n.center;
  }
}

nlohmann::json LineageInstance::describe() const {
  auto j = base_json();
  j["depth"] = tree_->depth();
  j["gamma"] = opt_.gamma;
  j["seed"] = opt_.seed;
  j["biases"] = std::vector<double>(delta_.begin() + 1, delta_.end());
  j["n_thresholds"] = std::vector<double>(n_.begin() + 1, n_.end());
  j["tail_bound"] = tail_bound();
  return j;
}

}  // namespace liplab
