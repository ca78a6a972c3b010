#include "freespec/pencil.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace freespec {

namespace {

void check_tuple(const MatrixTuple& x, int g, const char* where) {
  if (x.g() != g) {
    std::ostringstream msg;
    msg << where << ": tuple has " << x.g() << " coordinates, expected " << g;
    throw std::invalid_argument(msg.str());
  }
  const Eigen::Index n = x.level();
  for (const Matrix& m : x.coords) {
    if (m.rows() != n || m.cols() != n) {
      throw std::invalid_argument(std::string(where) +
                                  ": coordinates must share a square size");
    }
    if (!m.allFinite()) {
      throw std::invalid_argument(std::string(where) + ": non-finite entry");
    }
  }
}

void check_coordinate_index(int j, int g, const char* where) {
  if (j < 1 || j > g) {
    std::ostringstream msg;
    msg << where << ": coordinate index " << j << " out of range 1.." << g;
    throw std::invalid_argument(msg.str());
  }
}

Matrix shift2() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

}  // namespace

MatrixTuple MatrixTuple::zero(int g, Eigen::Index n) {
  MatrixTuple t;
  t.coords.assign(static_cast<std::size_t>(g), Matrix::Zero(n, n));
  return t;
}

MatrixTuple MatrixTuple::scalar(const std::vector<Complex>& values) {
  MatrixTuple t;
  t.coords.reserve(values.size());
  for (Complex v : values) {
    Matrix m(1, 1);
    m(0, 0) = v;
    t.coords.push_back(m);
  }
  return t;
}

Eigen::Index Pencil::dim() const {
  Eigen::Index d = 0;
  for (Eigen::Index dj : dims) d += dj;
  return d;
}

Eigen::Index Pencil::block_offset(int k) const {
  Eigen::Index off = 0;
  for (int i = 1; i < k; ++i) off += dims[static_cast<std::size_t>(i - 1)];
  return off;
}

Pencil build_pencil(const std::vector<Eigen::Index>& dims,
                    const std::vector<Matrix>& blocks, bool rescale) {
  if (blocks.empty()) throw std::invalid_argument("build_pencil: no blocks");
  if (dims.size() != blocks.size() + 1) {
    throw std::invalid_argument(
        "build_pencil: need g+1 dimensions for g blocks");
  }
  for (Eigen::Index dj : dims) {
    if (dj < 1) throw std::invalid_argument("build_pencil: dimension < 1");
  }

  Pencil p;
  p.dims = dims;
  p.blocks = blocks;
  const int g = p.g();
  for (int j = 1; j <= g; ++j) {
    Matrix& c = p.blocks[static_cast<std::size_t>(j - 1)];
    if (c.rows() != dims[static_cast<std::size_t>(j - 1)] ||
        c.cols() != dims[static_cast<std::size_t>(j)]) {
      std::ostringstream msg;
      msg << "build_pencil: block C_" << j << " has shape " << c.rows() << "x"
          << c.cols() << ", expected " << dims[static_cast<std::size_t>(j - 1)]
          << "x" << dims[static_cast<std::size_t>(j)];
      throw std::invalid_argument(msg.str());
    }
    const double norm = op_norm(c);
    if (rescale) {
      if (norm == 0.0) {
        throw std::invalid_argument("build_pencil: cannot rescale zero block");
      }
      c /= norm;
    } else if (std::abs(norm - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "build_pencil: ||C_" << j << "|| = " << norm
          << ", expected 1 (pass rescale to normalize)";
      throw std::invalid_argument(msg.str());
    }
  }

  const Eigen::Index d = p.dim();
  p.coeffs.assign(static_cast<std::size_t>(g), Matrix::Zero(d, d));
  for (int j = 1; j <= g; ++j) {
    const Matrix& c = p.blocks[static_cast<std::size_t>(j - 1)];
    p.coeffs[static_cast<std::size_t>(j - 1)].block(
        p.block_offset(j), p.block_offset(j + 1), c.rows(), c.cols()) = c;
  }
  return p;
}

Matrix lambda_eval(const Pencil& p, const MatrixTuple& x) {
  check_tuple(x, p.g(), "lambda_eval");
  const Eigen::Index n = x.level();
  if (n < 1) throw std::invalid_argument("lambda_eval: level must be >= 1");
  Matrix out = Matrix::Zero(p.dim() * n, p.dim() * n);
  for (int j = 1; j <= p.g(); ++j) {
    const Matrix& c = p.blocks[static_cast<std::size_t>(j - 1)];
    out.block(p.block_offset(j) * n, p.block_offset(j + 1) * n, c.rows() * n,
              c.cols() * n) =
        kron(c, x.coords[static_cast<std::size_t>(j - 1)]);
  }
  return out;
}

Matrix l_eval(const Pencil& p, const MatrixTuple& x) {
  const Matrix lam = lambda_eval(p, x);
  return Matrix::Identity(lam.rows(), lam.cols()) + lam + lam.adjoint();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Interior: return "Interior";
    case Verdict::Boundary: return "Boundary";
    case Verdict::Outside: return "Outside";
  }
  return "Unknown";
}

MembershipVerdict membership(const Pencil& p, const MatrixTuple& x,
                             double tol) {
  const SpectralData data = hermitian_spectrum(l_eval(p, x), tol);
  MembershipVerdict out;
  out.margin = data.margin;
  switch (data.psd_class) {
    case PsdClass::PositiveDefinite:
      out.verdict = Verdict::Interior;
      break;
    case PsdClass::PositiveSemidefiniteWithKernel:
      out.verdict = Verdict::Boundary;
      out.kernel = data.kernel;
      break;
    case PsdClass::Indefinite:
      out.verdict = Verdict::Outside;
      break;
  }
  return out;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g()) {
    throw std::invalid_argument("direct_sum: coordinate count mismatch");
  }
  const Eigen::Index n = x.level();
  const Eigen::Index m = y.level();
  MatrixTuple out = MatrixTuple::zero(x.g(), n + m);
  for (int j = 0; j < x.g(); ++j) {
    out.coords[static_cast<std::size_t>(j)].topLeftCorner(n, n) =
        x.coords[static_cast<std::size_t>(j)];
    out.coords[static_cast<std::size_t>(j)].bottomRightCorner(m, m) =
        y.coords[static_cast<std::size_t>(j)];
  }
  return out;
}

MatrixTuple unitary_conj(const Matrix& u, const MatrixTuple& x) {
  const Eigen::Index n = x.level();
  if (u.rows() != n || u.cols() != n) {
    throw std::invalid_argument("unitary_conj: size mismatch");
  }
  if (op_norm(u.adjoint() * u - Matrix::Identity(n, n)) > 1e-8) {
    throw std::invalid_argument("unitary_conj: matrix not unitary");
  }
  MatrixTuple out;
  out.coords.reserve(x.coords.size());
  for (const Matrix& m : x.coords) out.coords.push_back(u.adjoint() * m * u);
  return out;
}

MatrixTuple trivial_scale(const std::vector<Complex>& gamma,
                          const MatrixTuple& x) {
  if (static_cast<int>(gamma.size()) != x.g()) {
    throw std::invalid_argument("trivial_scale: scalar count mismatch");
  }
  for (Complex gj : gamma) {
    if (std::abs(std::abs(gj) - 1.0) > 1e-10) {
      throw std::invalid_argument("trivial_scale: scalar not unimodular");
    }
  }
  MatrixTuple out = x;
  for (int j = 0; j < x.g(); ++j) {
    out.coords[static_cast<std::size_t>(j)] *=
        gamma[static_cast<std::size_t>(j)];
  }
  return out;
}

MatrixTuple w_compose(const std::vector<Matrix>& w, const MatrixTuple& t) {
  if (static_cast<int>(w.size()) != t.g() + 1) {
    throw std::invalid_argument("w_compose: need g+1 unitaries");
  }
  const Eigen::Index n = t.level();
  for (const Matrix& wj : w) {
    if (wj.rows() != n || wj.cols() != n ||
        op_norm(wj.adjoint() * wj - Matrix::Identity(n, n)) > 1e-8) {
      throw std::invalid_argument("w_compose: entry not unitary");
    }
  }
  MatrixTuple out = t;
  for (int j = 1; j <= t.g(); ++j) {
    out.coords[static_cast<std::size_t>(j - 1)] =
        w[static_cast<std::size_t>(j - 1)].adjoint() *
        t.coords[static_cast<std::size_t>(j - 1)] *
        w[static_cast<std::size_t>(j)];
  }
  return out;
}

MatrixTuple project(const std::vector<int>& indices, const MatrixTuple& t) {
  MatrixTuple out = t;
  for (int j : indices) {
    check_coordinate_index(j, t.g(), "project");
    out.coords[static_cast<std::size_t>(j - 1)].setZero();
  }
  return out;
}

double eta_radius(const Pencil& p, int k, EtaMode mode) {
  const int g = p.g();
  check_coordinate_index(k, g, "eta_radius");
  std::vector<int> active;
  for (int j = 1; j <= g; ++j) {
    if (j == k) continue;
    if (mode == EtaMode::RightOnly && j == k - 1) continue;
    if (mode == EtaMode::LeftOnly && j == k + 1) continue;
    active.push_back(j);
  }
  if (active.empty()) return kEtaUnbounded;

  auto feasible = [&](double eta) {
    std::vector<Complex> point(static_cast<std::size_t>(g), Complex(0.0));
    point[static_cast<std::size_t>(k - 1)] = 1.0;
    for (int j : active) point[static_cast<std::size_t>(j - 1)] = eta;
    // infeasibility near a rigid direction scales like eta^2, so the cut
    // must sit well below the bisection resolution squared
    return membership(p, MatrixTuple::scalar(point), 1e-12).verdict !=
           Verdict::Outside;
  };

  double lo = 0.0;
  double hi = 2.0;
  if (!feasible(0.0)) return 0.0;
  if (feasible(hi)) return hi;  // bracket cap; ||C_j|| = 1 keeps eta <= 1
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

LinkResult link_inequality(const Pencil& p, const MatrixTuple& t, int j) {
  if (j < 1 || j > p.g() - 1) {
    throw std::invalid_argument("link_inequality: index must be in 1..g-1");
  }
  check_tuple(t, p.g(), "link_inequality");
  const Matrix& cj = p.blocks[static_cast<std::size_t>(j - 1)];
  const Matrix& cj1 = p.blocks[static_cast<std::size_t>(j)];
  const Matrix& tj = t.coords[static_cast<std::size_t>(j - 1)];
  const Matrix& tj1 = t.coords[static_cast<std::size_t>(j)];
  const Matrix sum = kron(tj.adjoint() * tj, cj.adjoint() * cj) +
                     kron(tj1 * tj1.adjoint(), cj1 * cj1.adjoint());
  LinkResult out;
  out.gap = Matrix::Identity(sum.rows(), sum.cols()) - sum;
  const SpectralData data = hermitian_spectrum(out.gap);
  out.psd_class = data.psd_class;
  out.margin = data.margin;
  return out;
}

MatrixTuple structured_boundary_tuple(const Pencil& p, BoundaryKind kind,
                                      int k, double eps) {
  const int g = p.g();
  check_coordinate_index(k, g, "structured_boundary_tuple");
  switch (kind) {
    case BoundaryKind::SingleShift: {
      MatrixTuple t = MatrixTuple::zero(g, 2);
      t.coords[static_cast<std::size_t>(k - 1)] = shift2();
      return t;
    }
    case BoundaryKind::AdjacentPair: {
      if (k + 1 > g) {
        throw std::invalid_argument("structured_boundary_tuple: need k+1 <= g");
      }
      MatrixTuple t = MatrixTuple::zero(g, 2);
      t.coords[static_cast<std::size_t>(k - 1)] = shift2();
      t.coords[static_cast<std::size_t>(k)] = shift2();
      return t;
    }
    case BoundaryKind::StaggeredPair: {
      if (k - 1 < 1) {
        throw std::invalid_argument("structured_boundary_tuple: need k-1 >= 1");
      }
      MatrixTuple t = MatrixTuple::zero(g, 3);
      t.coords[static_cast<std::size_t>(k - 1)](0, 1) = 1.0;
      t.coords[static_cast<std::size_t>(k - 2)](1, 2) = 1.0;
      return t;
    }
    case BoundaryKind::EpsWeightedPair: {
      if (k + 1 > g) {
        throw std::invalid_argument("structured_boundary_tuple: need k+1 <= g");
      }
      MatrixTuple t = MatrixTuple::zero(g, 3);
      Matrix& tk = t.coords[static_cast<std::size_t>(k - 1)];
      tk(0, 1) = 1.0;
      tk(1, 2) = 1.0;
      Matrix& tk1 = t.coords[static_cast<std::size_t>(k)];
      tk1(0, 1) = 1.0;
      tk1(1, 2) = eps;
      return t;
    }
  }
  throw std::invalid_argument("structured_boundary_tuple: unknown kind");
}

std::vector<MatrixTuple> all_structured_tuples(const Pencil& p, double eps) {
  std::vector<MatrixTuple> out;
  const int g = p.g();
  for (int k = 1; k <= g; ++k) {
    out.push_back(structured_boundary_tuple(p, BoundaryKind::SingleShift, k));
    if (k + 1 <= g) {
      out.push_back(
          structured_boundary_tuple(p, BoundaryKind::AdjacentPair, k));
      out.push_back(
          structured_boundary_tuple(p, BoundaryKind::EpsWeightedPair, k, eps));
    }
    if (k - 1 >= 1) {
      out.push_back(
          structured_boundary_tuple(p, BoundaryKind::StaggeredPair, k));
    }
  }
  return out;
}

}  // namespace freespec
