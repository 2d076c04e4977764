#pragma once

// Exact minimum-cost transshipment on a finite pointed metric space, with
// Kantorovich potentials, optimality certificates and integer rounding.

#include <map>
#include <utility>
#include <vector>

#include "graevkit/metric_space.hpp"
#include "graevkit/rational.hpp"

namespace graevkit {

/// Positive masses on ordered pairs (source, sink) of distinct points.
/// An entry ((a, b), m) ships m units from a to b.
class TransportPlan {
 public:
  using Arc = std::pair<PointIndex, PointIndex>;
  using Entries = std::map<Arc, Rational>;

  TransportPlan() = default;
  explicit TransportPlan(std::size_t point_count) : point_count_(point_count) {}

  /// Adds mass to an arc, dropping it if the result is zero. Throws
  /// DomainError on diagonal arcs, out-of-range points, or negative totals.
  void add(PointIndex source, PointIndex sink, const Rational& mass);

  const Entries& entries() const { return entries_; }
  std::size_t point_count() const { return point_count_; }
  bool empty() const { return entries_.empty(); }

  /// outflow - inflow at every point, basepoint included.
  std::vector<Rational> divergence() const;
  /// Divergence with the basepoint coordinate dropped.
  Chain divergence_chain(const PointedMetricSpace& space) const;

  Rational cost(const PointedMetricSpace& space) const;
  bool is_integral() const;

  friend bool operator==(const TransportPlan&, const TransportPlan&) = default;

 private:
  std::size_t point_count_ = 0;
  Entries entries_;
};

/// A 1-Lipschitz function on the points that vanishes at the basepoint.
struct DualPotential {
  std::vector<Rational> values;

  /// Sum of f(p) * chain(p).
  Rational pair_with(const Chain& chain) const;
};

struct MinCostSolution {
  TransportPlan plan;
  Rational cost;
};

/// Full output of a solve: the plan, its cost and a matching potential.
struct TransportCertificate {
  TransportPlan plan;
  Rational cost;
  DualPotential potential;
};

/// Minimum-cost plan whose divergence equals `divergence` at every
/// non-basepoint point; the basepoint absorbs whatever is left. Only points
/// in supp(divergence) and the basepoint take part. The returned plan is a
/// forest (no cycles in its support), so it has at most |supp| entries.
MinCostSolution solve_min_cost(const PointedMetricSpace& space, const Chain& divergence);

/// Optimal cost alone; skips building the plan.
Rational min_cost_value(const PointedMetricSpace& space, const Chain& divergence);

/// Kantorovich potential for the same problem: f(basepoint) = 0, 1-Lipschitz
/// on the whole space, and pair_with(divergence) equals the optimal cost.
DualPotential dual_potentials(const PointedMetricSpace& space, const Chain& divergence);

/// One solve returning plan, cost and potential together.
TransportCertificate solve_transport(const PointedMetricSpace& space, const Chain& divergence);

/// True iff f is feasible (zero at the basepoint, 1-Lipschitz) and
/// f(a) - f(b) = d(a, b) on every arc of the plan. Throws DomainError when
/// the plan or the potential has the wrong number of points.
bool verify_optimality(const PointedMetricSpace& space, const TransportPlan& plan,
                       const DualPotential& f);

/// Lipschitz feasibility alone.
bool is_feasible_potential(const PointedMetricSpace& space, const DualPotential& f);

/// Integral plan with the same divergence at every point, support inside the
/// input support and no larger cost. Fractional parts are cancelled around
/// cycles of fractional arcs, pushing each time in the direction that does
/// not raise the cost. Throws DomainError unless every divergence is integral.
TransportPlan round_to_integer_plan(const PointedMetricSpace& space, const TransportPlan& plan);

}  // namespace graevkit
