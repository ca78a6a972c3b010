#pragma once

#include "freespec/pencil.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace freespec {

/// Partition of the coordinates 1..g by boundary rigidity: an index sits in
/// zplus when no positive weight on the right neighbor keeps the scalar LMI
/// at the coordinate direction feasible, in zminus symmetrically on the
/// left. The first coordinate is never in zminus and the last never in
/// zplus. `plain` is the complement of the union.
struct IndexClassification {
  int g = 0;
  std::vector<int> zplus;
  std::vector<int> zminus;

  std::vector<int> z() const;      // sorted union
  std::vector<int> plain() const;  // complement of z() in 1..g
};

bool operator==(const IndexClassification& a, const IndexClassification& b);

/// Exact kernel criterion: j is in zplus iff the eigenspace of C_j*C_j at
/// eigenvalue 1 is not contained in ker(C_{j+1}*); zminus uses C_jC_j* at 1
/// against ker(C_{j-1}). Eigenvalue-1 vectors selected with |lambda - 1|
/// <= 1e-7.
IndexClassification classify_indices(const Pencil& p);

/// Brute-force oracle: j is not in zplus iff the level-1 LMI at
/// delta_j + eps * delta_{j+1} is feasible for some eps in the grid.
/// Feasibility at each eps allows slack max(1e-4 * eps^2, 1e-13) since a
/// genuine violation scales like eps^2; grid points whose eps^2 slack falls
/// below the 1e-13 noise floor are skipped as undecidable. Empty grid uses
/// {1, 1e-1, .., 1e-6}.
IndexClassification classify_oracle_grid(const Pencil& p,
                                         std::vector<double> grid = {});

/// LMI with general (non-hyper-Reinhardt) coefficients, used for the
/// auxiliary spectrahedra: I + sum B_j (x) Y_j + adjoints over the listed
/// original coordinates.
struct GeneralPencil {
  std::vector<int> coords;     // original indices, ascending
  std::vector<Matrix> coeffs;  // matching order

  int g() const { return static_cast<int>(coeffs.size()); }
};

Matrix l_eval(const GeneralPencil& p, const MatrixTuple& y);
MembershipVerdict membership(const GeneralPencil& p, const MatrixTuple& y,
                             double tol = kDefaultTol);

/// Coefficients B_j = P^{-1/2} A_j P^{-1/2} for j outside `fixed`, where
/// P = I + sum_{j in fixed} (b_j A_j + b_j* A_j*). The scalar point with the
/// given centers on `fixed` and zero elsewhere must be strictly feasible.
/// With all centers zero this is the plain restriction to the complement.
GeneralPencil aux_pencil(const Pencil& p, const std::vector<int>& fixed,
                         const std::vector<double>& centers);

enum class StructVerdict { CertifiedAtScale, Refuted, Unknown };

const char* to_string(StructVerdict v);

struct StructureReport {
  StructVerdict verdict = StructVerdict::Unknown;
  std::optional<MatrixTuple> witness;  // refutation input, re-checkable
  int trials = 0;
  double worst_margin = 1.0;
  std::string note;
};

struct DetectorConfig {
  int budget = 500;
  std::uint64_t seed = 1;
  std::vector<int> levels = {1, 2, 3};
};

/// Tests whether membership decouples on the index set `summand`:
/// T feasible iff every ||T_j|| <= 1 on the set and the projection killing
/// the set is feasible. Refutes with a witness T that has contractive
/// summand coordinates and feasible projection yet lies outside. Certifies
/// at scale only when sampling finds nothing and the scalar lambda-grid
/// substitution test passes. Sampling evidence, not a proof.
StructureReport detect_polydisc_summand(const Pencil& p,
                                        const std::vector<int>& summand,
                                        const DetectorConfig& cfg = {});

/// Tests whether membership splits at nu: T feasible iff both coordinate
/// projections (1..nu and nu+1..g) are. Refutes with a witness whose two
/// projections are strictly feasible while the joint tuple is not. The
/// sample set includes the doubled-level structured tuples from
/// build_nopi_tuple.
StructureReport detect_direct_sum(const Pencil& p, int nu,
                                  const DetectorConfig& cfg = {});

/// The doubled-level tuple Z built from X: Z_j = e1e1* (x) X_j for j < mu,
/// Z_mu = e1e2* (x) X_mu, Z_{mu+1} = e1e1* (x) X_{mu+1}, and
/// Z_j = e_l e_l* (x) X_j with l = choices[j - mu - 2] for j > mu + 1.
/// Whenever (X_1..X_mu, 0..) and (0.., X_{mu+1}..X_g) are both feasible,
/// Z is feasible.
MatrixTuple build_nopi_tuple(const Pencil& p, const MatrixTuple& x, int mu,
                             const std::vector<int>& choices = {});

}  // namespace freespec
