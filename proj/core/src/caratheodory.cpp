#include "freespec/caratheodory.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace freespec {

namespace {

void check_seed(const MobiusSeed& seed, const char* where) {
  if (std::abs(seed.c0) >= 1.0 - 1e-12) {
    std::ostringstream msg;
    msg << where << ": |c0| = " << std::abs(seed.c0)
        << ", must be strictly inside the unit disc";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Matrix WeightedShift::matrix() const {
  const int n = order();
  if (n < 1) throw std::invalid_argument("WeightedShift: order must be >= 1");
  if (std::abs(weights[0] - Complex(1.0)) > 1e-12) {
    throw std::invalid_argument("WeightedShift: first weight must be 1");
  }
  Matrix s = Matrix::Zero(n + 1, n + 1);
  for (int j = 0; j < n; ++j) s(j, j + 1) = weights[static_cast<std::size_t>(j)];
  return s;
}

MobiusSeed seed_from_mobius(Complex b, double theta) {
  return MobiusSeed{b, theta + std::numbers::pi};
}

TwoByTwoResult two_by_two_classify(Complex c0, Complex c1, double tol) {
  const double slack = 1.0 - std::norm(c0) - std::abs(c1);
  TwoByTwoResult out;
  if (std::abs(slack) <= tol && std::abs(c0) <= 1.0 + tol) {
    out.cls = TwoByTwoClass::NormOne;
    // c1 = e^{i theta}(|c0|^2 - 1); the kernel of I - MM* is (1, -e^{-i theta} c0)
    out.kernel = Vector(2);
    if (std::abs(c1) <= tol) {
      out.kernel << 1.0, 0.0;
    } else {
      const Complex phase = c1 / (std::norm(c0) - 1.0);
      out.kernel << 1.0, -std::conj(phase) * c0;
      out.kernel.normalize();
    }
  } else if (slack > 0.0) {
    out.cls = TwoByTwoClass::StrictContraction;
  } else {
    out.cls = TwoByTwoClass::NormExceedsOne;
  }
  return out;
}

std::vector<Complex> mobius_coeffs(const MobiusSeed& seed, int n) {
  check_seed(seed, "mobius_coeffs");
  if (n < 1) throw std::invalid_argument("mobius_coeffs: need N >= 1");
  const Complex w = std::polar(1.0, seed.theta);
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[0] = seed.c0;
  Complex power(1.0);  // (e^{i theta} c0*)^{j-1}
  const Complex drop = std::norm(seed.c0) - 1.0;
  for (int j = 1; j <= n; ++j) {
    c[static_cast<std::size_t>(j)] = w * power * drop;
    power *= w * std::conj(seed.c0);
  }
  return c;
}

Matrix extreme_toeplitz(const MobiusSeed& seed, const WeightedShift& shift) {
  check_seed(seed, "extreme_toeplitz");
  for (Complex lam : shift.weights) {
    const double mag = std::abs(lam);
    if (mag == 0.0) {
      throw std::invalid_argument("extreme_toeplitz: zero weight");
    }
    if (mag > 1.0 + 1e-12) {
      throw std::invalid_argument(
          "extreme_toeplitz: weight outside the closed unit disc");
    }
  }
  const int n = shift.order();
  const Matrix s = shift.matrix();
  const std::vector<Complex> c = mobius_coeffs(seed, n);
  Matrix t = c[0] * Matrix::Identity(n + 1, n + 1);
  Matrix power = Matrix::Identity(n + 1, n + 1);
  for (int j = 1; j <= n; ++j) {
    power = power * s;
    t += c[static_cast<std::size_t>(j)] * power;
  }
  return t;
}

double rigidity_excess(const Matrix& t, Complex mu) {
  if (t.rows() != t.cols() || t.rows() < 2) {
    throw std::invalid_argument("rigidity_excess: need a square matrix, size >= 2");
  }
  Matrix perturbed = t;
  perturbed(0, t.cols() - 1) += mu;
  return op_norm(perturbed) - 1.0;
}

bool is_nilpotent(const MatrixTuple& t, int order, double tol) {
  if (order < 1) throw std::invalid_argument("is_nilpotent: order must be >= 1");
  const int g = t.g();
  if (g == 0) return true;
  const Eigen::Index n = t.level();
  std::vector<Matrix> current;
  current.push_back(Matrix::Identity(n, n));
  for (int len = 1; len <= order; ++len) {
    if (current.size() > 100000 / static_cast<std::size_t>(g)) {
      throw std::invalid_argument("is_nilpotent: word budget exceeded");
    }
    std::vector<Matrix> next;
    next.reserve(current.size() * static_cast<std::size_t>(g));
    for (const Matrix& prod : current) {
      for (int j = 0; j < g; ++j) {
        next.push_back(prod * t.coords[static_cast<std::size_t>(j)]);
      }
    }
    current = std::move(next);
  }
  for (const Matrix& prod : current) {
    if (op_norm(prod) > tol) return false;
  }
  return true;
}

Matrix eval_free_series(const FreeSeries& series, const MatrixTuple& t,
                        bool strict) {
  const int g = t.g();
  const Eigen::Index n = t.level();
  if (n < 1) throw std::invalid_argument("eval_free_series: empty tuple");
  if (strict && !is_nilpotent(t, series.max_degree + 1)) {
    throw std::invalid_argument(
        "eval_free_series: input not nilpotent of the required order");
  }
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [word, coeff] : series.terms) {
    if (static_cast<int>(word.size()) > series.max_degree) {
      throw std::invalid_argument("eval_free_series: word exceeds max degree");
    }
    Matrix prod = Matrix::Identity(n, n);
    for (int letter : word) {
      if (letter < 1 || letter > g) {
        throw std::invalid_argument("eval_free_series: letter out of range");
      }
      prod = prod * t.coords[static_cast<std::size_t>(letter - 1)];
    }
    out += coeff * prod;
  }
  return out;
}

MatrixTuple nilpotent_shift_family(
    int g, int n, const std::vector<std::vector<Complex>>& weights) {
  if (g < 1 || n < 1) {
    throw std::invalid_argument("nilpotent_shift_family: need g, N >= 1");
  }
  if (static_cast<int>(weights.size()) != g) {
    throw std::invalid_argument(
        "nilpotent_shift_family: need one weight row per coordinate");
  }
  MatrixTuple t = MatrixTuple::zero(g, n + 1);
  for (int k = 0; k < g; ++k) {
    const auto& row = weights[static_cast<std::size_t>(k)];
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("nilpotent_shift_family: weight row length");
    }
    for (int u = 0; u < n; ++u) {
      t.coords[static_cast<std::size_t>(k)](u, u + 1) =
          row[static_cast<std::size_t>(u)];
    }
  }
  return t;
}

}  // namespace freespec
