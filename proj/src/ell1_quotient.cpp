#include "graevkit/ell1_quotient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "graevkit/error.hpp"

namespace graevkit {

NormedSpaceSpec NormedSpaceSpec::p_norm(std::size_t k, double p) {
  NormedSpaceSpec s;
  s.dimension = k;
  s.kind = NormKind::P;
  s.p = p;
  return s;
}

NormedSpaceSpec NormedSpaceSpec::max_norm(std::size_t k) {
  NormedSpaceSpec s;
  s.dimension = k;
  s.kind = NormKind::Max;
  return s;
}

NormedSpaceSpec NormedSpaceSpec::weighted_max(std::vector<double> weights) {
  NormedSpaceSpec s;
  s.dimension = weights.size();
  s.kind = NormKind::WeightedMax;
  s.weights = std::move(weights);
  return s;
}

void NormedSpaceSpec::validate() const {
  if (dimension == 0) throw DomainError("normed space must have positive dimension");
  if (kind == NormKind::P && !(p >= 1.0)) throw DomainError("p-norm needs p >= 1");
  if (kind == NormKind::WeightedMax) {
    if (weights.size() != dimension) throw DomainError("one weight per coordinate is required");
    for (double w : weights) {
      if (!(w > 0)) throw DomainError("weights must be positive");
    }
  }
}

double NormedSpaceSpec::norm(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension) {
    throw DomainError("vector has the wrong dimension");
  }
  switch (kind) {
    case NormKind::P: {
      if (p == 1.0) return x.cwiseAbs().sum();
      if (p == 2.0) return x.norm();
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
      return std::pow(s, 1.0 / p);
    }
    case NormKind::Max:
      return x.cwiseAbs().maxCoeff();
    case NormKind::WeightedMax: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, weights[i] * std::abs(x[i]));
      return m;
    }
  }
  return 0.0;
}

namespace {

// Bounds relating the norm to the cube geometry: every x with ||x||_inf = 1
// has ||x|| >= lower; every x with ||x||_inf <= 1 and one zero coordinate
// has ||x|| <= face_upper.
void cube_constants(const NormedSpaceSpec& spec, double& lower, double& face_upper) {
  const double k = static_cast<double>(spec.dimension);
  switch (spec.kind) {
    case NormKind::P:
      lower = 1.0;
      face_upper = std::pow(std::max(k - 1.0, 0.0), 1.0 / spec.p);
      break;
    case NormKind::Max:
      lower = 1.0;
      face_upper = 1.0;
      break;
    case NormKind::WeightedMax:
      lower = *std::min_element(spec.weights.begin(), spec.weights.end());
      face_upper = *std::max_element(spec.weights.begin(), spec.weights.end());
      break;
  }
}

}  // namespace

SphereNet build_net(const NormedSpaceSpec& spec, double mesh, std::size_t max_dimension) {
  spec.validate();
  if (!(mesh > 0)) throw DomainError("mesh must be positive");
  if (spec.dimension > max_dimension) {
    throw DomainError("dimension " + std::to_string(spec.dimension) + " exceeds the cap of " +
                      std::to_string(max_dimension));
  }
  SphereNet net{spec, {}, 0.0};
  const std::size_t k = spec.dimension;
  if (k == 1) {
    for (double s : {0.5, -0.5}) {
      Eigen::VectorXd v(1);
      v[0] = s;
      net.vectors.push_back(v * (0.5 / spec.norm(v)));
    }
    return net;
  }

  // A sphere point s is c / (2||c||) for c on the cube surface. Rounding c to
  // the grid point g on its face moves it by at most 1/m in each free
  // coordinate, and ||c/||c|| - g/||g|||| <= 2||c - g|| / ||c||.
  double lower = 1.0, face_upper = 1.0;
  cube_constants(spec, lower, face_upper);
  const auto m = static_cast<int>(std::ceil(face_upper / (lower * mesh)));
  net.mesh = face_upper / (lower * m);

  std::vector<int> j(k, 0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(k));
  for (;;) {
    const bool on_surface =
        std::any_of(j.begin(), j.end(), [m](int t) { return t == 0 || t == m; });
    if (on_surface) {
      for (std::size_t i = 0; i < k; ++i) v[static_cast<Eigen::Index>(i)] = -1.0 + 2.0 * j[i] / m;
      net.vectors.push_back(v * (0.5 / spec.norm(v)));
    }
    std::size_t i = k;
    while (i > 0 && ++j[i - 1] > m) j[--i] = 0;
    if (i == 0) break;
  }
  return net;
}

double estimate_mesh(const SphereNet& net, std::size_t samples, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  const auto k = static_cast<Eigen::Index>(net.spec.dimension);
  double worst = 0.0;
  Eigen::VectorXd s(k);
  for (std::size_t t = 0; t < samples; ++t) {
    for (Eigen::Index i = 0; i < k; ++i) s[i] = gauss(rng);
    const double len = net.spec.norm(s);
    if (len == 0.0) continue;
    s *= 0.5 / len;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : net.vectors) best = std::min(best, net.spec.norm(s - u));
    worst = std::max(worst, best);
  }
  return worst;
}

GreedyPreimage greedy_preimage(const SphereNet& net, const Eigen::VectorXd& x, std::size_t steps) {
  const double start = net.spec.norm(x);
  if (start > 0.5) throw DomainError("target norm exceeds 1/2; rescale first");
  if (net.vectors.empty()) throw DomainError("net is empty");

  GreedyPreimage out;
  out.residuals.reserve(steps + 1);
  out.residuals.push_back(start);
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(x.size());
  double radius = start;
  for (std::size_t n = 0; n < steps; ++n) {
    if (radius == 0.0) {
      out.residuals.push_back(0.0);
      continue;
    }
    const Eigen::VectorXd r = x - partial;
    const double lambda = 2.0 * radius;
    std::size_t best = 0;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < net.vectors.size(); ++i) {
      const double d = net.spec.norm(r - lambda * net.vectors[i]);
      if (d < best_norm) {
        best_norm = d;
        best = i;
      }
    }
    out.terms.push_back({best, lambda});
    partial += lambda * net.vectors[best];
    radius = net.spec.norm(x - partial);
    out.residuals.push_back(radius);
  }
  return out;
}

Reconstruction evaluate_preimage(const SphereNet& net, const std::vector<NetTerm>& terms) {
  Reconstruction out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.spec.dimension)), 0.0};
  for (const auto& t : terms) {
    out.value += t.lambda * net.vectors.at(t.index);
    out.l1_mass += std::abs(t.lambda);
  }
  return out;
}

}  // namespace graevkit
