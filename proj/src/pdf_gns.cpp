#include "graevkit/pdf_gns.hpp"

#include <algorithm>
#include <cmath>

#include "graevkit/error.hpp"

namespace graevkit {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> cyclic_factors)
    : factors_(std::move(cyclic_factors)) {
  if (factors_.empty()) throw DomainError("group needs at least one cyclic factor");
  for (int n : factors_) {
    if (n < 1) throw DomainError("cyclic factors must be positive");
    order_ *= static_cast<std::size_t>(n);
  }
}

std::vector<int> FiniteAbelianGroup::coordinates(std::size_t a) const {
  std::vector<int> c(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    c[i] = static_cast<int>(a % factors_[i]);
    a /= factors_[i];
  }
  return c;
}

std::size_t FiniteAbelianGroup::index_of(const std::vector<int>& coords) const {
  std::size_t a = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int n = factors_[i];
    a = a * n + static_cast<std::size_t>(((coords[i] % n) + n) % n);
  }
  return a;
}

std::size_t FiniteAbelianGroup::combine(std::size_t a, std::size_t b) const {
  auto ca = coordinates(a);
  const auto cb = coordinates(b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return index_of(ca);
}

std::size_t FiniteAbelianGroup::inverse(std::size_t a) const {
  auto c = coordinates(a);
  for (auto& x : c) x = -x;
  return index_of(c);
}

// ---------------------------------------------------------------------------

bool is_hermitian_symmetric(const FiniteAbelianGroup& group, const PDFunction& f, double tol) {
  if (f.values.size() != group.order()) return false;
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (std::abs(f.values[group.inverse(g)] - std::conj(f.values[g])) > tol) return false;
  }
  return true;
}

Eigen::MatrixXcd gram_matrix(const FiniteAbelianGroup& group, const PDFunction& f,
                             const std::vector<std::size_t>& elements, double tol) {
  if (f.values.size() != group.order()) {
    throw DomainError("function has " + std::to_string(f.values.size()) + " values for a group of order " +
                      std::to_string(group.order()));
  }
  if (!is_hermitian_symmetric(group, f, tol)) {
    throw DomainError("function does not satisfy f(-g) = conj f(g)");
  }
  const auto n = static_cast<Eigen::Index>(elements.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = f.values.at(group.difference(elements.at(i), elements.at(j)));
    }
  }
  return m;
}

PsdResult psd_check(const Eigen::MatrixXcd& matrix, double tol) {
  if (matrix.rows() != matrix.cols()) throw DomainError("psd_check needs a square matrix");
  if (matrix.size() == 0) return {true, 0.0};
  const double skew = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol) throw DomainError("matrix is not Hermitian (deviation " + std::to_string(skew) + ")");
  const Eigen::MatrixXcd h = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  return {lo >= -tol, lo};
}

PsdResult psd_check(const Eigen::MatrixXd& matrix, double tol) {
  return psd_check(Eigen::MatrixXcd(matrix.cast<Complex>()), tol);
}

double schoenberg_value(const Eigen::VectorXd& x, double p) {
  if (!(p > 0)) throw DomainError("Schoenberg exponent must be positive");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::exp(-s);
}

bool schoenberg_guaranteed(double p) { return p >= 1.0 && p <= 2.0; }

Eigen::MatrixXd schoenberg_gram(const std::vector<Eigen::VectorXd>& points, double p) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& x : points) {
    if (x.size() != points.front().size()) throw DomainError("points have mixed dimensions");
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = schoenberg_value(points[i] - points[j], p);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// GNS

GnsModel gns_construct(const FiniteAbelianGroup& group, const PDFunction& f, double tol) {
  const std::size_t n = group.order();
  std::vector<std::size_t> all(n);
  for (std::size_t g = 0; g < n; ++g) all[g] = g;

  GnsModel model;
  model.gram = gram_matrix(group, f, all, tol);

  // <x, y> = y^* A x with A = gram^T.
  const Eigen::MatrixXcd a = model.gram.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (a + a.adjoint()));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (lambda.minCoeff() < -tol) {
    throw DomainError("Gram matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(lambda.minCoeff()) + ")");
  }
  const double cutoff = tol * std::max(top, 0.0);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda[k] > cutoff && lambda[k] > 0) keep.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  const auto nn = static_cast<Eigen::Index>(n);

  model.eigenvalues.resize(r);
  model.quotient_basis.resize(nn, r);
  model.analysis.resize(r, nn);
  for (Eigen::Index k = 0; k < r; ++k) {
    const double l = lambda[keep[k]];
    const auto v = eig.eigenvectors().col(keep[k]);
    model.eigenvalues[k] = l;
    model.quotient_basis.col(k) = v / std::sqrt(l);
    model.analysis.row(k) = std::sqrt(l) * v.adjoint();
  }

  // (T_g x)(h) = x(g^{-1} h), so T_g sends the indicator of a to that of g a.
  model.rep.reserve(n);
  for (std::size_t g = 0; g < n; ++g) {
    Eigen::MatrixXcd shifted(nn, r);
    for (std::size_t a_idx = 0; a_idx < n; ++a_idx) {
      shifted.row(static_cast<Eigen::Index>(group.combine(g, a_idx))) =
          model.quotient_basis.row(static_cast<Eigen::Index>(a_idx));
    }
    model.rep.push_back(model.analysis * shifted);
  }
  model.cyclic = model.analysis.col(static_cast<Eigen::Index>(group.identity()));
  return model;
}

RepresentationReport verify_representation(const GnsModel& model, const FiniteAbelianGroup& group,
                                           const PDFunction& f, double tol) {
  RepresentationReport report;
  const std::size_t n = group.order();
  const auto r = static_cast<Eigen::Index>(model.dimension());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(r, r);

  for (std::size_t g = 0; g < n; ++g) {
    const auto& t = model.rep.at(g);
    report.unitarity = std::max(report.unitarity, (t.adjoint() * t - id).norm());
    const Complex value = model.cyclic.dot(t * model.cyclic);  // c^* T_g c
    report.recovery = std::max(report.recovery, std::abs(value - f.values.at(g)));
    for (std::size_t h = 0; h < n; ++h) {
      const auto& gh = model.rep.at(group.combine(g, h));
      report.homomorphism = std::max(report.homomorphism, (gh - t * model.rep.at(h)).norm());
    }
  }

  if (r > 0) {
    Eigen::MatrixXcd orbit(r, static_cast<Eigen::Index>(n));
    for (std::size_t g = 0; g < n; ++g) orbit.col(static_cast<Eigen::Index>(g)) = model.rep[g] * model.cyclic;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(orbit);
    const auto& s = svd.singularValues();
    const double cut = tol * s.maxCoeff();
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s[k] > cut) ++report.cyclic_rank;
    }
  }
  report.cyclicity = static_cast<double>(static_cast<std::size_t>(r) - report.cyclic_rank);
  return report;
}

}  // namespace graevkit
