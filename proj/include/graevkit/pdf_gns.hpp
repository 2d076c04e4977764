#pragma once

// Positive definite functions on finite abelian groups and on R^k samples,
// and the GNS construction of a cyclic unitary representation from one.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace graevkit {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// Z_{n_1} x ... x Z_{n_k}. Elements are indexed in mixed radix with the
/// last factor varying fastest; index 0 is the identity.
class FiniteAbelianGroup {
 public:
  /// Throws DomainError if a factor is < 1 or the list is empty.
  explicit FiniteAbelianGroup(std::vector<int> cyclic_factors);

  static FiniteAbelianGroup cyclic(int n) { return FiniteAbelianGroup({n}); }

  std::size_t order() const { return order_; }
  const std::vector<int>& factors() const { return factors_; }
  std::size_t identity() const { return 0; }
  std::size_t combine(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  /// a - b, i.e. b^{-1} a.
  std::size_t difference(std::size_t a, std::size_t b) const { return combine(a, inverse(b)); }

  std::vector<int> coordinates(std::size_t a) const;
  std::size_t index_of(const std::vector<int>& coords) const;

 private:
  std::vector<int> factors_;
  std::size_t order_ = 1;
};

/// Complex function on the elements of a group, indexed like the group.
struct PDFunction {
  std::vector<Complex> values;
};

/// f(-g) == conj(f(g)) within tol for every g.
bool is_hermitian_symmetric(const FiniteAbelianGroup& group, const PDFunction& f, double tol);

/// M[i][j] = f(g_j^{-1} g_i). Throws DomainError when f has the wrong size
/// or lacks the symmetry f(g^{-1}) = conj f(g).
Eigen::MatrixXcd gram_matrix(const FiniteAbelianGroup& group, const PDFunction& f,
                             const std::vector<std::size_t>& elements,
                             double tol = kDefaultTolerance);

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// Hermitian eigen-decomposition; PSD iff min eigenvalue >= -tol. Throws
/// DomainError when the matrix is not Hermitian within tol.
PsdResult psd_check(const Eigen::MatrixXcd& matrix, double tol = kDefaultTolerance);
PsdResult psd_check(const Eigen::MatrixXd& matrix, double tol = kDefaultTolerance);

/// exp(-sum |x_i|^p). Throws DomainError for p <= 0.
double schoenberg_value(const Eigen::VectorXd& x, double p);

/// True when p lies in [1, 2], where the kernel is guaranteed positive definite.
bool schoenberg_guaranteed(double p);

/// Entries schoenberg_value(x_i - x_j, p). Throws DomainError on mixed
/// dimensions.
Eigen::MatrixXd schoenberg_gram(const std::vector<Eigen::VectorXd>& points, double p);

/// Quotient of the functions on the group by the null space of
/// <x, y> = sum f(h^{-1} g) x(g) conj(y(h)), with the translation action.
struct GnsModel {
  Eigen::MatrixXcd gram;             // gram_matrix over all elements
  Eigen::VectorXd eigenvalues;       // kept eigenvalues, ascending
  /// Column k is an orthonormal basis vector of the quotient, written as a
  /// function on the group.
  Eigen::MatrixXcd quotient_basis;
  /// coordinates(x) = analysis * x for a function x on the group.
  Eigen::MatrixXcd analysis;
  std::vector<Eigen::MatrixXcd> rep;  // T_g in quotient coordinates
  Eigen::VectorXcd cyclic;            // class of the indicator of the identity

  std::size_t dimension() const { return static_cast<std::size_t>(cyclic.size()); }
};

/// Throws DomainError if the Gram matrix is not PSD within tol. Eigenvalues
/// at or below tol * (largest eigenvalue) are treated as null directions.
GnsModel gns_construct(const FiniteAbelianGroup& group, const PDFunction& f,
                       double tol = kDefaultTolerance);

struct RepresentationReport {
  double unitarity = 0.0;     // max_g ||T_g^* T_g - I||_F
  double homomorphism = 0.0;  // max_{g,h} ||T_{gh} - T_g T_h||_F
  double recovery = 0.0;      // max_g |<T_g c, c> - f(g)|
  std::size_t cyclic_rank = 0;
  double cyclicity = 0.0;     // dimension - cyclic_rank
  bool ok(double tol) const {
    return unitarity < tol && homomorphism < tol && recovery < tol && cyclicity < tol;
  }
};

RepresentationReport verify_representation(const GnsModel& model, const FiniteAbelianGroup& group,
                                           const PDFunction& f, double tol = kDefaultTolerance);

}  // namespace graevkit
