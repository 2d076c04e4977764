#include "graevkit/free_norm.hpp"

#include "graevkit/error.hpp"
#include "min_cost_flow.hpp"

namespace graevkit {

ProbMeasure::ProbMeasure(const PointedMetricSpace& space, Weights weights)
    : point_count_(space.size()), weights_(std::move(weights)) {
  Rational total = 0;
  for (const auto& [p, w] : weights_) {
    if (p >= space.size()) throw DomainError("measure refers to a point outside the space");
    if (w <= 0) {
      throw DomainError("measure weight at '" + space.name(p) + "' is not positive");
    }
    total += w;
  }
  if (total != 1) {
    throw DomainError("measure weights sum to " + to_string(total) + ", not 1");
  }
}

ProbMeasure ProbMeasure::dirac(const PointedMetricSpace& space, PointIndex p) {
  return ProbMeasure(space, {{p, Rational(1)}});
}

Chain ProbMeasure::to_chain(const PointedMetricSpace& space) const {
  Chain out;
  for (const auto& [p, w] : weights_) {
    if (p != space.basepoint()) out.add(p, w);
  }
  return out;
}

Rational free_norm(const PointedMetricSpace& space, const Chain& x) {
  return min_cost_value(space, x);
}

Rational free_distance(const PointedMetricSpace& space, const Chain& x, const Chain& y) {
  return free_norm(space, x - y);
}

KantorovichSolution kantorovich_transport(const PointedMetricSpace& space, const ProbMeasure& mu1,
                                          const ProbMeasure& mu2) {
  if (mu1.point_count() != space.size() || mu2.point_count() != space.size()) {
    throw DomainError("measures live on a different space");
  }
  // Bipartite network: left copies carry mu1, right copies absorb mu2.
  std::vector<PointIndex> left, right;
  for (const auto& [p, w] : mu1.weights()) left.push_back(p);
  for (const auto& [p, w] : mu2.weights()) right.push_back(p);
  const std::size_t k = left.size() + right.size();

  detail::FlowNetwork net;
  net.supply.resize(k);
  net.cost.assign(k, std::vector<std::optional<Rational>>(k));
  for (std::size_t i = 0; i < left.size(); ++i) {
    net.supply[i] = mu1.weights().at(left[i]);
    for (std::size_t j = 0; j < right.size(); ++j) {
      net.cost[i][left.size() + j] = space.distance(left[i], right[j]);
    }
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    net.supply[left.size() + j] = -mu2.weights().at(right[j]);
  }

  const auto flow = detail::solve_min_cost_flow(net);
  KantorovichSolution out{flow.cost, TransportPlan(space.size())};
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      const auto& m = flow.flow[i][left.size() + j];
      if (m > 0 && left[i] != right[j]) out.coupling.add(left[i], right[j], m);
    }
  }
  return out;
}

Rational kantorovich_distance(const PointedMetricSpace& space, const ProbMeasure& mu1,
                              const ProbMeasure& mu2) {
  return kantorovich_transport(space, mu1, mu2).cost;
}

}  // namespace graevkit
