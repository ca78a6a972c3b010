#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace freespec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default absolute tolerance for eigenvalue classification. All pencils
/// handled here have coefficients of order one, so an absolute cut is safe.
inline constexpr double kDefaultTol = 1e-8;

enum class PsdClass {
  PositiveDefinite,
  PositiveSemidefiniteWithKernel,
  Indefinite,
};

/// Spectral decomposition of a Hermitian matrix together with its
/// positivity classification.
struct SpectralData {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // orthonormal columns, matching order
  PsdClass psd_class = PsdClass::PositiveDefinite;
  double margin = 0.0;  // smallest eigenvalue
  Matrix kernel;        // eigenvectors with |eigenvalue| <= tol
};

/// Kronecker (tensor) product. Shapes (sr x sc) (x) (tr x tc) -> (sr*tr x sc*tc);
/// block (i,j) of the result equals S(i,j)*T.
Matrix kron(const Matrix& s, const Matrix& t);

/// Eigendecomposition of a Hermitian matrix with PSD classification.
///
/// The input must satisfy ||M - M*|| <= 1e-9 * (1 + ||M||); it is then
/// symmetrized to (M + M*)/2 before decomposing, which removes accumulation
/// noise from Kronecker assembly. When `tol` is not supplied the cut is
/// kDefaultTol * (1 + ||M||).
SpectralData hermitian_spectrum(const Matrix& m,
                                std::optional<double> tol = std::nullopt);

/// Inverse square root of a Hermitian positive definite matrix.
/// Throws if the smallest eigenvalue is <= tol.
Matrix inv_sqrt(const Matrix& m, double tol = kDefaultTol);

/// Operator norm (largest singular value).
double op_norm(const Matrix& m);

}  // namespace freespec
