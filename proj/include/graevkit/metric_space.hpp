#pragma once

// Finite pointed metric spaces and finitely supported chains over them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graevkit/rational.hpp"

namespace graevkit {

using PointIndex = std::size_t;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// A finite set of named points, a rational distance matrix in point order,
/// and a distinguished basepoint that plays the role of zero.
///
/// Construction only checks shape (square matrix of the right size, unique
/// names, basepoint present). The metric axioms are checked separately by
/// validate_space so that invalid inputs can still be reported on.
class PointedMetricSpace {
 public:
  /// Throws StructuralError on shape problems.
  PointedMetricSpace(std::vector<std::string> points, std::string basepoint,
                     RationalMatrix dist);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& name(PointIndex i) const { return points_.at(i); }
  PointIndex basepoint() const { return basepoint_; }
  const RationalMatrix& matrix() const { return dist_; }
  const Rational& distance(PointIndex i, PointIndex j) const { return dist_[i][j]; }

  /// Throws DomainError for an unknown identifier.
  PointIndex index_of(const std::string& id) const;
  bool contains(const std::string& id) const;

  Rational diameter() const;

  /// Common denominator of all distances.
  const mpz_class& distance_scale() const { return scale_; }
  /// distance * distance_scale() row-major, or empty when some scaled
  /// distance exceeds 2^40. Feeds the integer path of the flow solver.
  const std::vector<std::int64_t>& scaled_distances() const { return scaled_; }

  friend bool operator==(const PointedMetricSpace&, const PointedMetricSpace&) = default;

 private:
  std::vector<std::string> points_;
  PointIndex basepoint_ = 0;
  RationalMatrix dist_;
  mpz_class scale_ = 1;
  std::vector<std::int64_t> scaled_;
};

/// Element of the free vector space on the non-basepoint points: a finite
/// formal sum with nonzero rational coefficients keyed by point index.
class Chain {
 public:
  using Terms = std::map<PointIndex, Rational>;

  Chain() = default;
  explicit Chain(const Terms& terms);

  static Chain unit(PointIndex p, const Rational& coeff = 1);

  /// Adds coeff to the coefficient of p, erasing it if the sum is zero.
  void add(PointIndex p, const Rational& coeff);
  Rational coefficient(PointIndex p) const;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  Rational total() const;

  Chain operator-() const;
  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  Chain& operator*=(const Rational& scalar);

  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Rational& s, Chain a) { return a *= s; }
  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  Terms terms_;
};

/// The image of a point in the free space: the unit chain on p, or the zero
/// chain when p is the basepoint.
Chain point_chain(const PointedMetricSpace& space, PointIndex p);

/// Throws DomainError when a key is out of range or equals the basepoint.
void check_chain(const PointedMetricSpace& space, const Chain& chain);

struct Violation {
  std::string axiom;  // "zero-diagonal", "positivity", "symmetry", "triangle"
  std::vector<PointIndex> indices;
  std::vector<Rational> values;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks the metric axioms. Each violated axiom is reported once, with the
/// lexicographically first witness. A triangle witness (i, j, k) means
/// d(i,k) > d(i,j) + d(j,k); its values are {d(i,k), d(i,j), d(j,k)}.
ValidationReport validate_space(const PointedMetricSpace& space);

/// Throws DomainError naming the first violation if the space is not a metric.
void require_metric(const PointedMetricSpace& space);

/// Moves chains from basepoint a to basepoint b along x -> x - a + b.
class RebaseTransform {
 public:
  RebaseTransform(PointIndex old_basepoint, PointIndex new_basepoint)
      : from_(old_basepoint), to_(new_basepoint) {}

  Chain operator()(const Chain& chain) const;

  PointIndex old_basepoint() const { return from_; }
  PointIndex new_basepoint() const { return to_; }

 private:
  PointIndex from_;
  PointIndex to_;
};

struct RebasedSpace {
  PointedMetricSpace space;
  RebaseTransform transform;
};

/// Same metric with `new_basepoint` distinguished. Point order is unchanged,
/// so chains keep their indices.
RebasedSpace rebase(const PointedMetricSpace& space, const std::string& new_basepoint);

inline constexpr const char* kDaggerPoint = "†";

/// Appends a point at distance 1 from every existing point and makes it the
/// basepoint. Requires diameter <= 1.
PointedMetricSpace dagger_augment(const PointedMetricSpace& space);

/// x -> x - basepoint, written in the augmented space (old indices are kept,
/// the old basepoint becomes an ordinary point).
Chain dagger_embed(const PointedMetricSpace& space, const Chain& chain);

}  // namespace graevkit
