#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "bergman/annulus.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

/// Node counts for the tensor quadrature. Zero selects a count sized to the
/// basis window and modulus.
struct QuadratureSpec {
  int radial_nodes = 0;   ///< Gauss-Legendre nodes in u = log rho, >= 64
  int angular_nodes = 0;  ///< trapezoid nodes in theta, >= 2 * width + 2
};

/// Gram matrix of the Laurent monomials lambda^n, basis_lo <= n <= basis_hi,
/// with lambda centered at ann.center().
///
/// The true entries span hundreds of orders of magnitude, so the matrix is
/// kept Jacobi-normalized: gram(m, n) = normalized(m, n) *
/// exp((log_diag[m] + log_diag[n]) / 2).
class GramSystem {
 public:
  int basis_lo = 0;
  int basis_hi = 0;
  QuadratureSpec quad;
  Annulus ann = Annulus::from_logs(0.0, -1.0, 0.0);
  Eigen::MatrixXcd normalized;  ///< unit diagonal, Hermitian
  Eigen::VectorXd log_diag;     ///< log <lambda^n, lambda^n>

  std::size_t size() const { return static_cast<std::size_t>(basis_hi - basis_lo + 1); }
  /// <lambda^m, lambda^n>; may overflow for extreme exponents.
  std::complex<double> entry(int m, int n) const;
  /// Materialized true-scale matrix.
  Eigen::MatrixXcd gram() const;
};

/// Laurent window [-N, N].
GramSystem build_gram(const Annulus& ann, int N, const QuadratureSpec& quad = {});
/// Arbitrary window; throws DomainError for fewer than 9 monomials.
GramSystem build_gram_window(const Annulus& ann, int basis_lo, int basis_hi,
                             const QuadratureSpec& quad = {});

/// 2N+1 exponents split so the neglected tails on both sides decay at the same
/// geometric rate for a point at canonical position alpha. Windows are nested
/// in N for fixed alpha.
std::pair<int, int> balanced_window(int N, double alpha);

struct ExtremalSolution {
  double value = 0.0;                ///< truncated-space supremum
  Eigen::VectorXcd coefficients;     ///< maximizer in the Jacobi-scaled basis
  double constraint_residual = 0.0;  ///< max_i<j |d_i.a| / (||d_i|| ||a||)
  bool ridge_used = false;
};

/// Throws OutOfDomainError if z is not strictly inside g.ann, DomainError for
/// j outside 0..2, InternalError for rank-deficient constraints and
/// QuadratureError when Cholesky fails even after one ridge retry.
ExtremalSolution extremal_solve(const GramSystem& g, std::complex<double> z, int j);
double extremal_j(const GramSystem& g, std::complex<double> z, int j);

/// Throws EnvelopeError outside q in [0.02, 0.9], 4 <= N <= 60.
void check_envelope(const Annulus& ann, int N);

/// All three extremal values on the balanced window, then derive_eval.
BergmanEval oracle_bergman(const Annulus& ann, std::complex<double> z, int N,
                           const QuadratureSpec& quad = {});

}  // namespace bergman
