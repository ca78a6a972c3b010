#include "freespec/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace freespec {

Matrix kron(const Matrix& s, const Matrix& t) {
  Matrix out(s.rows() * t.rows(), s.cols() * t.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      out.block(i * t.rows(), j * t.cols(), t.rows(), t.cols()) = s(i, j) * t;
    }
  }
  return out;
}

SpectralData hermitian_spectrum(const Matrix& m, std::optional<double> tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_spectrum: matrix not square");
  }
  const double scale = op_norm(m);
  const double asym = op_norm(m - m.adjoint());
  if (asym > 1e-9 * (1.0 + scale)) {
    std::ostringstream msg;
    msg << "hermitian_spectrum: input not Hermitian, ||M - M*|| = " << asym;
    throw std::invalid_argument(msg.str());
  }
  const double cut = tol ? *tol : kDefaultTol * (1.0 + scale);
  if (cut <= 0.0) {
    throw std::invalid_argument("hermitian_spectrum: tol must be positive");
  }

  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_spectrum: eigensolver failed");
  }

  SpectralData data;
  data.eigenvalues = solver.eigenvalues();
  data.eigenvectors = solver.eigenvectors();
  data.margin = data.eigenvalues(0);

  Eigen::Index kernel_dim = 0;
  for (Eigen::Index i = 0; i < data.eigenvalues.size(); ++i) {
    if (std::abs(data.eigenvalues(i)) <= cut) ++kernel_dim;
  }
  data.kernel.resize(m.rows(), kernel_dim);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < data.eigenvalues.size(); ++i) {
    if (std::abs(data.eigenvalues(i)) <= cut) {
      data.kernel.col(col++) = data.eigenvectors.col(i);
    }
  }

  if (data.margin > cut) {
    data.psd_class = PsdClass::PositiveDefinite;
  } else if (data.margin >= -cut) {
    data.psd_class = PsdClass::PositiveSemidefiniteWithKernel;
  } else {
    data.psd_class = PsdClass::Indefinite;
  }
  return data;
}

Matrix inv_sqrt(const Matrix& m, double tol) {
  const SpectralData data = hermitian_spectrum(m);
  if (data.margin <= tol) {
    std::ostringstream msg;
    msg << "inv_sqrt: matrix singular to tolerance, lambda_min = "
        << data.margin;
    throw std::invalid_argument(msg.str());
  }
  Eigen::VectorXd scaled = data.eigenvalues.array().sqrt().inverse();
  return data.eigenvectors * scaled.asDiagonal() * data.eigenvectors.adjoint();
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

}  // namespace freespec
