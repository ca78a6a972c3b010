#pragma once

#include "freespec/caratheodory.hpp"
#include "freespec/pencil.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace freespec {

/// Candidate free automorphism in canonical form: coordinate j evaluates to
/// m_{b_j}(e^{i theta_j} X_{perm(j)}) plus an optional higher-order series.
/// perm is a bijection of 1..g stored as perm[j-1] = pi(j).
struct CandidateAutomorphism {
  std::vector<int> perm;
  std::vector<double> theta;
  std::vector<Complex> b;
  std::vector<FreeSeries> higher;  // empty, or one series per coordinate

  int g() const { return static_cast<int>(perm.size()); }
  bool has_higher() const;

  static CandidateAutomorphism identity(int g);
};

/// Throws unless perm is bijective, sizes agree, every |b_j| < 1, and each
/// higher series uses only words of length >= 2 that are not pure powers of
/// the coordinate's own letter.
void validate(const CandidateAutomorphism& c);

/// Constant and linear data of a free map near 0: f(T(t)) = b + T(L t) on
/// level-2 shift probes. For a bona fide automorphism L is an invertible
/// scaled permutation (one nonzero entry per row and column).
struct AffineLinearPart {
  std::vector<Complex> constant;
  Matrix linear;
  bool scaled_permutation = false;
};

/// (bI + e^{i theta} X)(I + b* e^{i theta} X)^{-1}. The resolvent must be
/// well conditioned (condition number <= 1e12).
Matrix mobius_matrix(Complex b, double theta, const Matrix& x);

/// Evaluates the candidate coordinatewise. Higher-order terms require a
/// nilpotent input in strict mode.
MatrixTuple eval(const CandidateAutomorphism& c, const MatrixTuple& x,
                 bool strict = true);

using FreeMapFn = std::function<MatrixTuple(const MatrixTuple&)>;

/// Probes a black-box free map at the zero tuple and at level-2 shift
/// directions to recover its constant and linear part.
AffineLinearPart extract_affine_linear(const FreeMapFn& f, int g);

/// Indices j (1-based) with |b_j| > tol.
std::vector<int> fixed_support(const CandidateAutomorphism& c,
                               double tol = kDefaultTol);

/// Conjugates by trivial scalings so every center becomes the nonnegative
/// real |b_j| and every phase becomes 0; the permutation and |b_j| are
/// unchanged and the operation is idempotent. Higher-term coefficients pick
/// up the corresponding unimodular factors.
CandidateAutomorphism normalize(const CandidateAutomorphism& c);

/// Symbolic composition outer(inner(x)) within the Moebius-permutation
/// class (no higher terms). The permutation composes as
/// tau(j) = pi_inner(pi_outer(j)); the disc parameters compose via 2x2
/// matrix representatives.
CandidateAutomorphism compose(const CandidateAutomorphism& outer,
                              const CandidateAutomorphism& inner);

/// Smallest n such that psi = c^n has identity permutation on the supplied
/// coordinate set and the fixed support of psi, psi^2, psi^3 agree. Throws
/// after g! iterations without stabilizing.
std::pair<int, CandidateAutomorphism> power_stabilize(
    const CandidateAutomorphism& c, const std::vector<int>& plain_indices);

/// m-fold iterate of z -> (b+z)/(1+bz) starting from 0. Strictly increasing
/// in m for 0 < b < 1, with limit 1.
double mobius_origin_orbit(double b, int m);

/// First m >= 1 whose orbit value reaches lambda. Throws if max_iter
/// iterations do not suffice.
int mobius_orbit_crossing(double b, double lambda, int max_iter = 100000);

struct SamplePlan {
  std::vector<int> levels = {1, 2, 3};
  int random_interior = 200;
  std::uint64_t seed = 0;
  double eps = 0.5;
};

struct SampleResult {
  std::string kind;
  Verdict input_verdict = Verdict::Outside;
  double input_margin = 0.0;
  std::optional<Verdict> output_verdict;
  double output_margin = 0.0;
  bool ok = true;
  std::string error;
};

struct VerifyReport {
  bool pass = true;
  int samples_run = 0;
  int failures = 0;
  int eval_errors = 0;
  double worst_margin = 0.0;            // most negative output margin seen
  std::optional<MatrixTuple> witness;   // first Outside image, re-checkable
  std::optional<MatrixTuple> witness_input;  // its preimage
  std::vector<SampleResult> samples;
};

/// Refutation search: evaluates the candidate on random interior tuples,
/// the structured boundary families, and nilpotent shift tuples. Interior
/// inputs must land in the closed set, Boundary inputs on the boundary; any
/// Outside image refutes the candidate and the witness input is recorded.
/// Outside inputs are skipped; evaluation failures are recorded per sample.
/// PASS means "not refuted at this sample size", never "proved".
VerifyReport verify_automorphism(const Pencil& p,
                                 const CandidateAutomorphism& c,
                                 const SamplePlan& plan = {});

}  // namespace freespec
