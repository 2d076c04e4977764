#pragma once

// The free abelian group on the non-basepoint points with its Graev metric,
// and the extension of Lipschitz maps into finite metric abelian groups.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graevkit/metric_space.hpp"
#include "graevkit/rational.hpp"
#include "graevkit/transport.hpp"

namespace graevkit {

/// Integer combination of non-basepoint points. Zero coefficients are never
/// stored.
class Word {
 public:
  using Terms = std::map<PointIndex, std::int64_t>;

  Word() = default;
  explicit Word(const Terms& terms);

  static Word generator(PointIndex p, std::int64_t coeff = 1);

  void add(PointIndex p, std::int64_t coeff);
  std::int64_t coefficient(PointIndex p) const;
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Chain to_chain() const;

  Word operator-() const;
  Word& operator+=(const Word& other);
  Word& operator-=(const Word& other);
  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend Word operator-(Word a, const Word& b) { return a -= b; }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.terms_ <=> b.terms_; }

 private:
  Terms terms_;
};

/// Throws DomainError if a key is out of range or is the basepoint.
void check_word(const PointedMetricSpace& space, const Word& word);

/// All words with at most `max_support` generators and coefficients in
/// [-max_abs, max_abs], the zero word included. Ordered by support, then
/// lexicographically.
std::vector<Word> enumerate_words(const PointedMetricSpace& space, std::size_t max_support,
                                  std::int64_t max_abs);

/// Graev distance: the free norm of u - v.
Rational graev_distance(const PointedMetricSpace& space, const Word& u, const Word& v);

/// Memoises norms of differences, for workloads that query many pairs.
class GraevDistanceCache {
 public:
  explicit GraevDistanceCache(const PointedMetricSpace& space) : space_(space) {}

  const Rational& norm(const Word& w);
  Rational distance(const Word& u, const Word& v) { return norm(u - v); }

 private:
  const PointedMetricSpace& space_;
  std::map<Word, Rational> norms_;
};

/// An all-integer optimal plan for divergence w.
TransportPlan integer_witness(const PointedMetricSpace& space, const Word& w);

using ElementIndex = std::size_t;

/// Finite abelian group given by tables, with a bi-invariant rational metric.
class MetricAbelianGroup {
 public:
  /// Checks the group axioms (closure, associativity, commutativity,
  /// identity, inverses) and that dist is a bi-invariant metric. Shape
  /// problems raise StructuralError, axiom failures DomainError.
  MetricAbelianGroup(std::vector<std::string> elements,
                     std::vector<std::vector<ElementIndex>> op, RationalMatrix dist);

  std::size_t order() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  ElementIndex identity() const { return identity_; }
  ElementIndex combine(ElementIndex a, ElementIndex b) const { return op_[a][b]; }
  ElementIndex inverse(ElementIndex a) const { return inverse_[a]; }
  const Rational& distance(ElementIndex a, ElementIndex b) const { return dist_[a][b]; }
  const RationalMatrix& metric() const { return dist_; }

  /// n * a, by doubling.
  ElementIndex multiple(ElementIndex a, std::int64_t n) const;

  ElementIndex index_of(const std::string& name) const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<ElementIndex>> op_;
  std::vector<ElementIndex> inverse_;
  ElementIndex identity_ = 0;
  RationalMatrix dist_;
};

/// The homomorphism from words into a target group determined by its values
/// on the points.
class GroupHom {
 public:
  GroupHom(const MetricAbelianGroup& target, std::vector<ElementIndex> on_points)
      : target_(&target), on_points_(std::move(on_points)) {}

  ElementIndex operator()(const Word& w) const;
  const std::vector<ElementIndex>& on_points() const { return on_points_; }

 private:
  const MetricAbelianGroup* target_;
  std::vector<ElementIndex> on_points_;
};

struct LipschitzReport {
  bool exhaustive = false;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  /// max over checked pairs with u != v of dist(hom u, hom v) / graev(u, v)
  Rational max_ratio = 0;
  bool ok() const { return violations == 0; }
};

struct HomExtension {
  GroupHom hom;
  LipschitzReport report;
};

inline constexpr std::uint32_t kLipschitzSampleSeed = 0;
inline constexpr std::size_t kLipschitzSamplePairs = 2000;

/// Extends f (point -> element, f(basepoint) = identity, 1-Lipschitz) to
/// words and checks dist(hom u, hom v) <= graev(u, v) on word pairs: all
/// pairs of words with support <= 3 and |coefficients| <= 2 when the space
/// has at most 5 points, otherwise kLipschitzSamplePairs random pairs drawn
/// from that family with kLipschitzSampleSeed.
HomExtension extend_hom(const PointedMetricSpace& space, const MetricAbelianGroup& target,
                        const std::vector<ElementIndex>& f);

}  // namespace graevkit
