#include "freespec/sampling.hpp"

#include <stdexcept>

namespace freespec {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine);
}

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine);
}

Complex Rng::gaussian() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return Complex(dist(engine), dist(engine));
}

Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  }
  return m;
}

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  const Matrix g = ginibre(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // fix the phase ambiguity so the distribution is Haar
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_contraction(Rng& rng, Eigen::Index n, double rho) {
  Matrix m = ginibre(rng, n, n);
  const double norm = op_norm(m);
  if (norm == 0.0) return m;
  return m * (rho / norm);
}

MatrixTuple random_tuple(Rng& rng, int g, Eigen::Index n, double scale) {
  MatrixTuple t;
  t.coords.reserve(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) {
    t.coords.push_back(random_contraction(rng, n, scale * rng.uniform(0.1, 1.0)));
  }
  return t;
}

Pencil random_pencil(Rng& rng, int max_g, Eigen::Index max_dim) {
  const int g = rng.uniform_int(1, max_g);
  std::vector<Eigen::Index> dims;
  for (int k = 0; k <= g; ++k) {
    dims.push_back(rng.uniform_int(1, static_cast<int>(max_dim)));
  }
  std::vector<Matrix> blocks;
  for (int j = 1; j <= g; ++j) {
    blocks.push_back(ginibre(rng, dims[static_cast<std::size_t>(j - 1)],
                             dims[static_cast<std::size_t>(j)]));
  }
  return build_pencil(dims, blocks, /*rescale=*/true);
}

std::optional<MatrixTuple> random_interior_tuple(const Pencil& p, Rng& rng,
                                                 Eigen::Index level,
                                                 int attempts) {
  for (int it = 0; it < attempts; ++it) {
    MatrixTuple t = random_tuple(rng, p.g(), level, rng.uniform(0.1, 0.9));
    if (membership(p, t).verdict == Verdict::Interior) return t;
    // shrink toward zero; small enough tuples are always interior
    for (double s : {0.5, 0.25}) {
      MatrixTuple shrunk = t;
      for (Matrix& m : shrunk.coords) m *= s;
      if (membership(p, shrunk).verdict == Verdict::Interior) return shrunk;
    }
  }
  return std::nullopt;
}

}  // namespace freespec
