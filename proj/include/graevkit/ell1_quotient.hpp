#pragma once

// Greedy preimages under the norm-one map from l1 onto a finite-dimensional
// normed space, built on a finite net of the sphere of radius 1/2.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace graevkit {

enum class NormKind { P, Max, WeightedMax };

struct NormedSpaceSpec {
  std::size_t dimension = 1;
  NormKind kind = NormKind::P;
  double p = 2.0;               // used when kind == P, must be >= 1
  std::vector<double> weights;  // used when kind == WeightedMax, all > 0

  static NormedSpaceSpec p_norm(std::size_t k, double p);
  static NormedSpaceSpec max_norm(std::size_t k);
  static NormedSpaceSpec weighted_max(std::vector<double> weights);

  /// Throws DomainError on a bad parameter or a dimension mismatch.
  double norm(const Eigen::VectorXd& x) const;
  void validate() const;
};

inline constexpr std::size_t kMaxNetDimension = 8;

struct SphereNet {
  NormedSpaceSpec spec;
  std::vector<Eigen::VectorXd> vectors;  // each of norm 1/2 up to rounding
  /// Covering radius guaranteed by the grid construction.
  double mesh = 0.0;
};

/// Grid on the surface of the cube [-1, 1]^k, fine enough for the requested
/// mesh, each point rescaled to norm 1/2. Throws DomainError if mesh <= 0 or
/// the dimension exceeds `max_dimension`.
SphereNet build_net(const NormedSpaceSpec& spec, double mesh,
                    std::size_t max_dimension = kMaxNetDimension);

/// Largest distance from `samples` random points of the radius-1/2 sphere to
/// the net. An empirical lower estimate of the covering radius.
double estimate_mesh(const SphereNet& net, std::size_t samples, std::uint32_t seed);

struct NetTerm {
  std::size_t index;
  double lambda;
};

struct GreedyPreimage {
  std::vector<NetTerm> terms;
  /// residuals[0] = ||x||, residuals[n] = ||x - partial sum after n steps||.
  std::vector<double> residuals;
};

/// At each step chooses the net vector u minimising ||r - 2||r|| u|| and
/// subtracts that multiple. Stops adding terms once the residual is exactly
/// zero. Throws DomainError if ||x|| > 1/2.
GreedyPreimage greedy_preimage(const SphereNet& net, const Eigen::VectorXd& x, std::size_t steps);

struct Reconstruction {
  Eigen::VectorXd value;
  double l1_mass = 0.0;  // sum of |lambda|
};

/// Sum of lambda * net[index], accumulated in term order.
Reconstruction evaluate_preimage(const SphereNet& net, const std::vector<NetTerm>& terms);

}  // namespace graevkit
