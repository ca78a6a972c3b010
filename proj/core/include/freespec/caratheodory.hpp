#pragma once

#include "freespec/pencil.hpp"

#include <map>
#include <vector>

namespace freespec {

/// Weighted shift of order n: the (n+1)x(n+1) matrix with weights on the
/// first superdiagonal and zeros elsewhere. The first weight must be 1.
struct WeightedShift {
  std::vector<Complex> weights;

  int order() const { return static_cast<int>(weights.size()); }
  Matrix matrix() const;
};

/// Disc-automorphism seed in the f-convention
/// f(z) = (c0 - e^{i theta} z) / (1 - c0* e^{i theta} z), with |c0| < 1.
struct MobiusSeed {
  Complex c0;
  double theta = 0.0;
};

/// Converts a center/phase pair in the m-convention
/// m_b(e^{i theta} z) = (b + e^{i theta} z) / (1 + b* e^{i theta} z)
/// to the equivalent f-convention seed. The two conventions differ by a
/// phase shift of pi; this is the only place that shift appears.
MobiusSeed seed_from_mobius(Complex b, double theta);

enum class TwoByTwoClass { NormOne, StrictContraction, NormExceedsOne };

struct TwoByTwoResult {
  TwoByTwoClass cls = TwoByTwoClass::StrictContraction;
  Vector kernel;  // unit kernel vector of I - MM*, present for NormOne
};

/// Classifies M = [[c0, c1], [0, c0]] by the sign of 1 - |c0|^2 - |c1|,
/// which equals zero exactly when ||M|| = 1 (with |c0| <= 1).
TwoByTwoResult two_by_two_classify(Complex c0, Complex c1,
                                   double tol = 1e-10);

/// Taylor coefficients c_0..c_N of f at 0:
/// c_j = e^{i theta} (e^{i theta} c0*)^{j-1} (|c0|^2 - 1) for j >= 1.
std::vector<Complex> mobius_coeffs(const MobiusSeed& seed, int n);

/// T = sum_{j=0}^n c_j S^j over the weighted shift S. With nonzero weights
/// of modulus at most 1 the result has operator norm exactly 1; this is the
/// unique norm-one completion of the initial coefficients.
Matrix extreme_toeplitz(const MobiusSeed& seed, const WeightedShift& shift);

/// ||T + mu * P|| - 1 where P is the corner matrix unit e_1 e_{n+1}*.
/// Positive for every mu != 0 when T comes from extreme_toeplitz over a
/// shift of order n >= 2; for n = 1 the corner entry is the free Schur
/// parameter and the excess can be negative.
double rigidity_excess(const Matrix& t, Complex mu);

/// Sparse truncated free power series: words over letters 1..g of length
/// at most max_degree mapped to scalar coefficients. Absent words are zero;
/// the empty word is the constant term.
struct FreeSeries {
  int max_degree = 0;
  std::map<std::vector<int>, Complex> terms;
};

/// True when every product of `order` coordinates has norm <= tol,
/// checked exhaustively over all g^order words.
bool is_nilpotent(const MatrixTuple& t, int order, double tol = 1e-10);

/// Sum over stored words of coeff * T_{j1} ... T_{jk}; an exact finite sum.
/// In strict mode the input must be nilpotent of order max_degree + 1.
Matrix eval_free_series(const FreeSeries& series, const MatrixTuple& t,
                        bool strict = true);

/// The word-separation tuple: g superdiagonal (N+1)x(N+1) matrices with
/// T_k carrying weights[k-1][0..N-1]. For a length-N word alpha the (1, N+1)
/// entry of T^alpha is the product lambda_{j1,1} lambda_{j2,2} ... .
MatrixTuple nilpotent_shift_family(
    int g, int n, const std::vector<std::vector<Complex>>& weights);

}  // namespace freespec
