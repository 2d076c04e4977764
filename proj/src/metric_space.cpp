#include "graevkit/metric_space.hpp"

#include <algorithm>
#include <set>

#include "graevkit/error.hpp"

namespace graevkit {

PointedMetricSpace::PointedMetricSpace(std::vector<std::string> points, std::string basepoint,
                                       RationalMatrix dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  if (points_.empty()) throw StructuralError("space has no points");
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) throw StructuralError("duplicate point identifier '" + p + "'");
  }
  const auto it = std::find(points_.begin(), points_.end(), basepoint);
  if (it == points_.end()) {
    throw StructuralError("basepoint '" + basepoint + "' is not among the points");
  }
  basepoint_ = static_cast<PointIndex>(it - points_.begin());
  if (dist_.size() != points_.size()) {
    throw StructuralError("distance matrix has " + std::to_string(dist_.size()) + " rows for " +
                          std::to_string(points_.size()) + " points");
  }
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    if (dist_[i].size() != points_.size()) {
      throw StructuralError("row " + std::to_string(i) + " of the distance matrix has " +
                            std::to_string(dist_[i].size()) + " entries, expected " +
                            std::to_string(points_.size()));
    }
  }

  for (const auto& row : dist_) {
    for (const auto& d : row) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), d.get_den_mpz_t());
  }
  const mpz_class limit = mpz_class(1) << 40;
  scaled_.reserve(points_.size() * points_.size());
  for (const auto& row : dist_) {
    for (const auto& d : row) {
      const mpz_class v = d.get_num() * (scale_ / d.get_den());
      if (abs(v) > limit) {
        scaled_.clear();
        return;
      }
      scaled_.push_back(v.get_si());
    }
  }
}

PointIndex PointedMetricSpace::index_of(const std::string& id) const {
  const auto it = std::find(points_.begin(), points_.end(), id);
  if (it == points_.end()) throw DomainError("unknown point identifier '" + id + "'");
  return static_cast<PointIndex>(it - points_.begin());
}

bool PointedMetricSpace::contains(const std::string& id) const {
  return std::find(points_.begin(), points_.end(), id) != points_.end();
}

Rational PointedMetricSpace::diameter() const {
  Rational best = 0;
  for (const auto& row : dist_) {
    for (const auto& d : row) best = std::max(best, d);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Chain

Chain::Chain(const Terms& terms) {
  for (const auto& [p, c] : terms) add(p, c);
}

Chain Chain::unit(PointIndex p, const Rational& coeff) {
  Chain c;
  c.add(p, coeff);
  return c;
}

void Chain::add(PointIndex p, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Chain::coefficient(PointIndex p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Chain::total() const {
  Rational sum = 0;
  for (const auto& [p, c] : terms_) sum += c;
  return sum;
}

Chain Chain::operator-() const {
  Chain out = *this;
  for (auto& [p, c] : out.terms_) c = -c;
  return out;
}

Chain& Chain::operator+=(const Chain& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

Chain& Chain::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scalar;
  return *this;
}

Chain point_chain(const PointedMetricSpace& space, PointIndex p) {
  if (p >= space.size()) throw DomainError("point index out of range");
  return p == space.basepoint() ? Chain{} : Chain::unit(p);
}

void check_chain(const PointedMetricSpace& space, const Chain& chain) {
  for (const auto& [p, c] : chain.terms()) {
    if (p >= space.size()) throw DomainError("chain refers to a point outside the space");
    if (p == space.basepoint()) {
      throw DomainError("chain has a coefficient on the basepoint '" + space.name(p) + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_space(const PointedMetricSpace& space) {
  const auto& d = space.matrix();
  const std::size_t n = space.size();
  ValidationReport report;
  auto record = [&](std::string axiom, std::vector<PointIndex> idx, std::vector<Rational> vals) {
    report.violations.push_back({std::move(axiom), std::move(idx), std::move(vals)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) {
      record("zero-diagonal", {i}, {d[i][i]});
      break;
    }
  }

  [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && d[i][j] <= 0) {
          record("positivity", {i, j}, {d[i][j]});
          return;
        }
      }
    }
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (d[i][j] != d[j][i]) {
          record("symmetry", {i, j}, {d[i][j], d[j][i]});
          return;
        }
      }
    }
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (d[i][k] > d[i][j] + d[j][k]) {
            record("triangle", {i, j, k}, {d[i][k], d[i][j], d[j][k]});
            return;
          }
        }
      }
    }
  }();

  report.ok = report.violations.empty();
  return report;
}

void require_metric(const PointedMetricSpace& space) {
  const auto report = validate_space(space);
  if (report.ok) return;
  const auto& v = report.violations.front();
  std::string where;
  for (auto i : v.indices) where += (where.empty() ? "" : ",") + space.name(i);
  throw DomainError("not a metric: " + v.axiom + " fails at (" + where + ")");
}

// ---------------------------------------------------------------------------
// Basepoint change and dagger augmentation

Chain RebaseTransform::operator()(const Chain& chain) const {
  if (from_ == to_) return chain;
  // p -> p - a + b; b is the new zero, so only the a-coordinate moves.
  Chain out;
  for (const auto& [p, c] : chain.terms()) {
    if (p != to_) out.add(p, c);
  }
  out.add(from_, -chain.total());
  return out;
}

RebasedSpace rebase(const PointedMetricSpace& space, const std::string& new_basepoint) {
  const PointIndex target = space.index_of(new_basepoint);
  return {PointedMetricSpace(space.points(), new_basepoint, space.matrix()),
          RebaseTransform(space.basepoint(), target)};
}

PointedMetricSpace dagger_augment(const PointedMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.distance(i, j) > 1) {
        throw DomainError("diameter exceeds 1: d(" + space.name(i) + "," + space.name(j) +
                          ") = " + to_string(space.distance(i, j)));
      }
    }
  }
  if (space.contains(kDaggerPoint)) {
    throw DomainError(std::string("space already has a point named ") + kDaggerPoint);
  }
  auto points = space.points();
  points.emplace_back(kDaggerPoint);
  RationalMatrix dist = space.matrix();
  for (auto& row : dist) row.emplace_back(1);
  dist.emplace_back(n + 1, Rational(1));
  dist[n][n] = 0;
  return PointedMetricSpace(std::move(points), kDaggerPoint, std::move(dist));
}

Chain dagger_embed(const PointedMetricSpace& space, const Chain& chain) {
  check_chain(space, chain);
  Chain out = chain;
  out.add(space.basepoint(), -chain.total());
  return out;
}

}  // namespace graevkit
