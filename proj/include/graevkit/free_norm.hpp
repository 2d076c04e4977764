#pragma once

// The free norm on chains, the distance it induces, and the transportation
// distance between finitely supported probability measures.

#include <map>

#include "graevkit/metric_space.hpp"
#include "graevkit/rational.hpp"
#include "graevkit/transport.hpp"

namespace graevkit {

/// Probability measure on the points; the basepoint may carry mass.
class ProbMeasure {
 public:
  using Weights = std::map<PointIndex, Rational>;

  /// Throws DomainError unless all weights are positive, refer to points of
  /// the space and sum to exactly 1.
  ProbMeasure(const PointedMetricSpace& space, Weights weights);

  static ProbMeasure dirac(const PointedMetricSpace& space, PointIndex p);

  const Weights& weights() const { return weights_; }
  std::size_t point_count() const { return point_count_; }

  /// The measure read as a chain: the basepoint coordinate is dropped.
  Chain to_chain(const PointedMetricSpace& space) const;

 private:
  std::size_t point_count_;
  Weights weights_;
};

/// Optimal transshipment cost for divergence x.
Rational free_norm(const PointedMetricSpace& space, const Chain& x);

/// free_norm(x - y).
Rational free_distance(const PointedMetricSpace& space, const Chain& x, const Chain& y);

struct KantorovichSolution {
  Rational cost;
  /// Optimal coupling as a plan; mass left in place (x -> x) is omitted.
  TransportPlan coupling;
};

/// Balanced transportation between the two measures: first marginal mu1,
/// second marginal mu2, no free node.
KantorovichSolution kantorovich_transport(const PointedMetricSpace& space, const ProbMeasure& mu1,
                                          const ProbMeasure& mu2);

Rational kantorovich_distance(const PointedMetricSpace& space, const ProbMeasure& mu1,
                              const ProbMeasure& mu2);

}  // namespace graevkit
