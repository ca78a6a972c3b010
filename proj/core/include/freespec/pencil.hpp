#pragma once

#include "freespec/matrix.hpp"

#include <limits>
#include <vector>

namespace freespec {

/// A g-tuple of n x n matrices, a point of the matrix level n.
struct MatrixTuple {
  std::vector<Matrix> coords;

  int g() const { return static_cast<int>(coords.size()); }
  Eigen::Index level() const { return coords.empty() ? 0 : coords[0].rows(); }

  static MatrixTuple zero(int g, Eigen::Index n);
  /// Level-1 tuple from scalar coordinates.
  static MatrixTuple scalar(const std::vector<Complex>& values);
};

/// Block-superdiagonal pencil data: dimensions d_1..d_{g+1}, norm-one blocks
/// C_1..C_g (C_j of size d_j x d_{j+1}), and the assembled d x d coefficients
/// A_1..A_g where A_j carries C_j in block (j, j+1) and is zero elsewhere.
struct Pencil {
  std::vector<Eigen::Index> dims;
  std::vector<Matrix> blocks;
  std::vector<Matrix> coeffs;

  int g() const { return static_cast<int>(blocks.size()); }
  Eigen::Index dim() const;
  /// Row offset of the k-th diagonal block (1-based, k in 1..g+1).
  Eigen::Index block_offset(int k) const;
};

/// Assembles a pencil from dimensions and blocks. Each ||C_j|| must be within
/// 1e-6 of 1; with `rescale` set, blocks are normalized to norm exactly 1.
Pencil build_pencil(const std::vector<Eigen::Index>& dims,
                    const std::vector<Matrix>& blocks, bool rescale = false);

/// Sum_j A_j (x) X_j, of size d*n x d*n.
Matrix lambda_eval(const Pencil& p, const MatrixTuple& x);

/// I + Lambda(X) + Lambda(X)*, Hermitian and block tridiagonal.
Matrix l_eval(const Pencil& p, const MatrixTuple& x);

enum class Verdict { Interior, Boundary, Outside };

struct MembershipVerdict {
  Verdict verdict = Verdict::Outside;
  double margin = 0.0;  // smallest eigenvalue of L(X)
  Matrix kernel;        // present for Boundary verdicts
};

const char* to_string(Verdict v);

/// Three-way membership with absolute tolerance on lambda_min.
MembershipVerdict membership(const Pencil& p, const MatrixTuple& x,
                             double tol = kDefaultTol);

/// Coordinatewise block-diagonal join.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

/// Coordinatewise U* X_j U for unitary U.
MatrixTuple unitary_conj(const Matrix& u, const MatrixTuple& x);

/// Coordinatewise multiplication by unimodular scalars.
MatrixTuple trivial_scale(const std::vector<Complex>& gamma,
                          const MatrixTuple& x);

/// Sandwich action: coordinate j (1-based) maps to W_{j-1}* T_j W_j, for a
/// (g+1)-tuple W_0..W_g of unitaries.
MatrixTuple w_compose(const std::vector<Matrix>& w, const MatrixTuple& t);

/// Zeroes the coordinates listed in `indices` (1-based), copies the rest.
MatrixTuple project(const std::vector<int>& indices, const MatrixTuple& t);

enum class EtaMode { Full, RightOnly, LeftOnly };

/// +infinity sentinel returned by eta_radius when no other coordinate
/// participates (the constraint set is empty).
inline constexpr double kEtaUnbounded =
    std::numeric_limits<double>::infinity();

/// sup{eta >= 0 : L(delta_k + eta * sum of the other coordinate directions)
/// is PSD}, by bisection on [0, 2] to 1e-6. RightOnly drops coordinate k-1
/// from the sum, LeftOnly drops k+1.
double eta_radius(const Pencil& p, int k, EtaMode mode = EtaMode::Full);

struct LinkResult {
  Matrix gap;  // I - (T_j*T_j (x) C_j*C_j + T_{j+1}T_{j+1}* (x) C_{j+1}C_{j+1}*)
  PsdClass psd_class = PsdClass::PositiveDefinite;
  double margin = 0.0;
};

/// The two-term Schur-complement inequality linking adjacent coordinates;
/// its gap is PSD whenever L(T) is. Valid for 1 <= j <= g-1.
LinkResult link_inequality(const Pencil& p, const MatrixTuple& t, int j);

enum class BoundaryKind {
  SingleShift,      // T_k = 2x2 shift, rest zero
  AdjacentPair,     // T_k = T_{k+1} = 2x2 shift
  StaggeredPair,    // 3x3 matrix-unit shifts at k and k-1
  EpsWeightedPair,  // 3x3 double shifts at k and k+1, second weighted by eps
};

/// The structured test families used throughout the verification and
/// detection machinery. Each call emits one tuple of the requested kind
/// anchored at coordinate k.
MatrixTuple structured_boundary_tuple(const Pencil& p, BoundaryKind kind,
                                      int k, double eps = 0.5);

/// Every structured tuple valid for the pencil, across kinds and anchors.
std::vector<MatrixTuple> all_structured_tuples(const Pencil& p,
                                               double eps = 0.5);

}  // namespace freespec
