#include "graevkit/graev.hpp"

#include <algorithm>
#include <random>

#include "graevkit/error.hpp"
#include "graevkit/free_norm.hpp"

namespace graevkit {

// ---------------------------------------------------------------------------
// Word

Word::Word(const Terms& terms) {
  for (const auto& [p, c] : terms) add(p, c);
}

Word Word::generator(PointIndex p, std::int64_t coeff) {
  Word w;
  w.add(p, coeff);
  return w;
}

void Word::add(PointIndex p, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t Word::coefficient(PointIndex p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

Chain Word::to_chain() const {
  Chain c;
  for (const auto& [p, k] : terms_) c.add(p, Rational(static_cast<long>(k)));
  return c;
}

Word Word::operator-() const {
  Word out = *this;
  for (auto& [p, c] : out.terms_) c = -c;
  return out;
}

Word& Word::operator+=(const Word& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

Word& Word::operator-=(const Word& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

void check_word(const PointedMetricSpace& space, const Word& word) {
  for (const auto& [p, c] : word.terms()) {
    if (p >= space.size()) throw DomainError("word refers to a point outside the space");
    if (p == space.basepoint()) {
      throw DomainError("word has a coefficient on the basepoint '" + space.name(p) + "'");
    }
  }
}

std::vector<Word> enumerate_words(const PointedMetricSpace& space, std::size_t max_support,
                                  std::int64_t max_abs) {
  std::vector<PointIndex> gens;
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (p != space.basepoint()) gens.push_back(p);
  }
  std::vector<std::int64_t> values;
  for (std::int64_t c = -max_abs; c <= max_abs; ++c) {
    if (c != 0) values.push_back(c);
  }

  std::vector<Word> out{Word{}};
  const std::size_t top = std::min(max_support, gens.size());
  for (std::size_t k = 1; k <= top; ++k) {
    // subsets of size k in lexicographic order
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      std::vector<std::size_t> digit(k, 0);
      for (;;) {
        Word w;
        for (std::size_t i = 0; i < k; ++i) w.add(gens[pick[i]], values[digit[i]]);
        out.push_back(std::move(w));
        std::size_t i = k;
        while (i > 0 && ++digit[i - 1] == values.size()) digit[--i] = 0;
        if (i == 0) break;
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == gens.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

Rational graev_distance(const PointedMetricSpace& space, const Word& u, const Word& v) {
  check_word(space, u);
  check_word(space, v);
  return free_norm(space, (u - v).to_chain());
}

const Rational& GraevDistanceCache::norm(const Word& w) {
  auto it = norms_.find(w);
  if (it == norms_.end()) {
    check_word(space_, w);
    it = norms_.emplace(w, free_norm(space_, w.to_chain())).first;
  }
  return it->second;
}

TransportPlan integer_witness(const PointedMetricSpace& space, const Word& w) {
  check_word(space, w);
  return round_to_integer_plan(space, solve_min_cost(space, w.to_chain()).plan);
}

// ---------------------------------------------------------------------------
// MetricAbelianGroup

MetricAbelianGroup::MetricAbelianGroup(std::vector<std::string> elements,
                                       std::vector<std::vector<ElementIndex>> op,
                                       RationalMatrix dist)
    : elements_(std::move(elements)), op_(std::move(op)), dist_(std::move(dist)) {
  const std::size_t n = elements_.size();
  if (n == 0) throw StructuralError("group has no elements");
  if (op_.size() != n || dist_.size() != n) {
    throw StructuralError("group tables do not match the element list");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (op_[i].size() != n || dist_[i].size() != n) {
      throw StructuralError("group table row " + std::to_string(i) + " has the wrong length");
    }
    for (auto c : op_[i]) {
      if (c >= n) throw StructuralError("group operation leaves the element list");
    }
  }

  auto is_identity = [&](ElementIndex e) {
    for (std::size_t a = 0; a < n; ++a) {
      if (op_[e][a] != a || op_[a][e] != a) return false;
    }
    return true;
  };
  ElementIndex e = 0;
  while (e < n && !is_identity(e)) ++e;
  if (e == n) throw DomainError("group operation has no identity");
  identity_ = e;

  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (op_[a][b] != op_[b][a]) throw DomainError("group operation is not commutative");
      if (op_[a][b] == identity_) inverse_[a] = b;
      for (std::size_t c = 0; c < n; ++c) {
        if (op_[op_[a][b]][c] != op_[a][op_[b][c]]) {
          throw DomainError("group operation is not associative");
        }
      }
    }
    if (inverse_[a] == n) throw DomainError("element '" + elements_[a] + "' has no inverse");
  }

  for (std::size_t a = 0; a < n; ++a) {
    if (dist_[a][a] != 0) throw DomainError("group metric has a nonzero diagonal");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && dist_[a][b] <= 0) throw DomainError("group metric is not positive");
      if (dist_[a][b] != dist_[b][a]) throw DomainError("group metric is not symmetric");
      for (std::size_t c = 0; c < n; ++c) {
        if (dist_[a][c] > dist_[a][b] + dist_[b][c]) {
          throw DomainError("group metric violates the triangle inequality");
        }
        if (dist_[op_[a][c]][op_[b][c]] != dist_[a][b]) {
          throw DomainError("group metric is not invariant");
        }
      }
    }
  }
}

ElementIndex MetricAbelianGroup::multiple(ElementIndex a, std::int64_t n) const {
  if (n < 0) {
    a = inverse_[a];
    n = -n;
  }
  ElementIndex result = identity_;
  while (n > 0) {
    if (n & 1) result = op_[result][a];
    a = op_[a][a];
    n >>= 1;
  }
  return result;
}

ElementIndex MetricAbelianGroup::index_of(const std::string& name) const {
  const auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) throw DomainError("unknown group element '" + name + "'");
  return static_cast<ElementIndex>(it - elements_.begin());
}

// ---------------------------------------------------------------------------
// Lipschitz extension

ElementIndex GroupHom::operator()(const Word& w) const {
  ElementIndex acc = target_->identity();
  for (const auto& [p, c] : w.terms()) {
    acc = target_->combine(acc, target_->multiple(on_points_.at(p), c));
  }
  return acc;
}

HomExtension extend_hom(const PointedMetricSpace& space, const MetricAbelianGroup& target,
                        const std::vector<ElementIndex>& f) {
  if (f.size() != space.size()) throw DomainError("map must be defined on every point");
  for (auto v : f) {
    if (v >= target.order()) throw DomainError("map value outside the target group");
  }
  if (f[space.basepoint()] != target.identity()) {
    throw DomainError("map must send the basepoint to the identity");
  }
  for (PointIndex x = 0; x < space.size(); ++x) {
    for (PointIndex y = x + 1; y < space.size(); ++y) {
      if (target.distance(f[x], f[y]) > space.distance(x, y)) {
        throw DomainError("map is not 1-Lipschitz at (" + space.name(x) + "," + space.name(y) +
                          ")");
      }
    }
  }

  HomExtension out{GroupHom(target, f), {}};
  GraevDistanceCache graev(space);
  auto check = [&](const Word& u, const Word& v) {
    const Rational rho = target.distance(out.hom(u), out.hom(v));
    const Rational& bound = graev.distance(u, v);
    ++out.report.pairs_checked;
    if (rho > bound) ++out.report.violations;
    if (bound > 0) out.report.max_ratio = std::max(out.report.max_ratio, Rational(rho / bound));
  };

  const auto words = enumerate_words(space, 3, 2);
  if (space.size() <= 5) {
    out.report.exhaustive = true;
    for (const auto& u : words) {
      for (const auto& v : words) check(u, v);
    }
  } else {
    std::mt19937 rng(kLipschitzSampleSeed);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (std::size_t i = 0; i < kLipschitzSamplePairs; ++i) {
      const auto& u = words[pick(rng)];
      const auto& v = words[pick(rng)];
      check(u, v);
    }
  }
  return out;
}

}  // namespace graevkit
