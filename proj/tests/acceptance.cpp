// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every criterion exercises the public library surface only.

#include "freespec/caratheodory.hpp"
#include "freespec/classify.hpp"
#include "freespec/freemap.hpp"
#include "freespec/pencil.hpp"
#include "freespec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace freespec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Pencil disc_pencil() {
  Matrix c(1, 1);
  c << 1.0;
  return build_pencil({1, 1}, {c});
}

Pencil chain_pencil() {
  Matrix c(1, 1);
  c << 1.0;
  return build_pencil({1, 1, 1}, {c, c});
}

Pencil split_pencil() {
  Matrix c1 = Matrix::Zero(2, 2);
  c1(0, 0) = 1.0;
  Matrix c2 = Matrix::Zero(2, 2);
  c2(1, 1) = 1.0;
  return build_pencil({2, 2, 2}, {c1, c2});
}

std::vector<int> random_perm(Rng& rng, int g) {
  std::vector<int> perm(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) perm[static_cast<std::size_t>(j)] = j + 1;
  for (int j = g - 1; j > 0; --j) {
    std::swap(perm[static_cast<std::size_t>(j)],
              perm[static_cast<std::size_t>(rng.uniform_int(0, j))]);
  }
  return perm;
}

CandidateAutomorphism random_candidate(Rng& rng, int g, double max_center) {
  CandidateAutomorphism c;
  c.perm = random_perm(rng, g);
  for (int j = 0; j < g; ++j) {
    c.theta.push_back(rng.uniform(0.0, kTwoPi));
    c.b.push_back(rng.uniform(0.0, max_center) *
                  std::polar(1.0, rng.uniform(0.0, kTwoPi)));
  }
  return c;
}

Complex scalar_eval_coord(const CandidateAutomorphism& c, int j,
                          const std::vector<Complex>& z) {
  const Complex w =
      std::polar(1.0, c.theta[static_cast<std::size_t>(j)]) *
      z[static_cast<std::size_t>(c.perm[static_cast<std::size_t>(j)] - 1)];
  const Complex b = c.b[static_cast<std::size_t>(j)];
  return (b + w) / (1.0 + std::conj(b) * w);
}

struct Gate {
  int failed = 0;

  void report(int n, bool ok, const std::string& what,
              const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++failed;
  }
};

// 1. Membership verdict and margin are invariant under the symmetry group
// actions: unitary conjugation, trivial scalings, and the sandwich action.
bool criterion_symmetry(std::string& detail) {
  Rng rng(101);
  std::vector<Pencil> pencils = {disc_pencil(), chain_pencil(), split_pencil()};
  Rng prng(103);
  for (int i = 0; i < 5; ++i) pencils.push_back(random_pencil(prng));

  for (std::size_t pi = 0; pi < pencils.size(); ++pi) {
    const Pencil& p = pencils[pi];
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Index n = rng.uniform_int(1, 4);
      const MatrixTuple x = random_tuple(rng, p.g(), n, rng.uniform(0.0, 1.4));
      const MembershipVerdict base = membership(p, x);

      std::vector<MatrixTuple> images;
      images.push_back(unitary_conj(random_unitary(rng, n), x));
      std::vector<Complex> gamma;
      for (int j = 0; j < p.g(); ++j) {
        gamma.push_back(std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      }
      images.push_back(trivial_scale(gamma, x));
      std::vector<Matrix> w;
      for (int j = 0; j <= p.g(); ++j) w.push_back(random_unitary(rng, n));
      images.push_back(w_compose(w, x));

      for (const MatrixTuple& y : images) {
        const MembershipVerdict after = membership(p, y);
        if (after.verdict != base.verdict ||
            std::abs(after.margin - base.margin) > 1e-8) {
          std::ostringstream os;
          os << "pencil " << pi << " trial " << trial << ": margin "
             << base.margin << " vs " << after.margin;
          detail = os.str();
          return false;
        }
      }
    }
  }
  return true;
}

// 2. The Reinhardt scaling property: an interior scalar point times a
// coordinatewise contraction never leaves the closed set.
bool criterion_scaling(std::string& detail) {
  Rng rng(211);
  int done = 0;
  while (done < 100) {
    const Pencil p = random_pencil(rng);
    const auto lambda = random_interior_tuple(p, rng, 1);
    if (!lambda) continue;
    const Eigen::Index n = rng.uniform_int(1, 3);
    MatrixTuple scaled;
    for (int j = 0; j < p.g(); ++j) {
      scaled.coords.push_back(lambda->coords[static_cast<std::size_t>(j)](0, 0) *
                              random_contraction(rng, n));
    }
    const double margin = membership(p, scaled).margin;
    if (margin < -1e-8) {
      std::ostringstream os;
      os << "trial " << done << ": margin " << margin;
      detail = os.str();
      return false;
    }
    ++done;
  }
  return true;
}

// 3. Extremality and rigidity of the Moebius Toeplitz completion.
bool criterion_caratheodory(std::string& detail) {
  Rng rng(307);
  for (int trial = 0; trial < 200; ++trial) {
    // order >= 2 so the corner coefficient is forced rather than free data
    const int n = rng.uniform_int(2, 6);
    const MobiusSeed seed{rng.uniform(0.0, 0.8) *
                              std::polar(1.0, rng.uniform(0.0, kTwoPi)),
                          rng.uniform(0.0, kTwoPi)};
    WeightedShift shift;
    shift.weights.push_back(Complex(1.0));
    for (int j = 1; j < n; ++j) {
      shift.weights.push_back(rng.uniform(0.9, 1.0) *
                              std::polar(1.0, rng.uniform(0.0, kTwoPi)));
    }
    const Matrix t = extreme_toeplitz(seed, shift);
    if (std::abs(op_norm(t) - 1.0) > 1e-9) {
      detail = "norm drifts from 1 on trial " + std::to_string(trial);
      return false;
    }
    for (double mu : {1e-3, 1e-2, 1e-1}) {
      const double excess =
          rigidity_excess(t, mu * std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      if (excess <= 1e-6) {
        std::ostringstream os;
        os << "rigidity excess " << excess << " at |mu| " << mu;
        detail = os.str();
        return false;
      }
    }
    // moving any forced Taylor coefficient by 1e-2 breaks extremality
    const int j = rng.uniform_int(2, n);
    Matrix power = Matrix::Identity(n + 1, n + 1);
    const Matrix s = shift.matrix();
    for (int i = 0; i < j; ++i) power = power * s;
    const Matrix bumped =
        t + 1e-2 * std::polar(1.0, rng.uniform(0.0, kTwoPi)) * power;
    if (op_norm(bumped) <= 1.0 + 1e-6) {
      detail = "coefficient bump kept norm near 1 on trial " +
               std::to_string(trial);
      return false;
    }
  }
  return true;
}

// 4. The kernel-based index classification agrees with the brute-force grid
// oracle, including on the standard pencils.
bool criterion_classify(std::string& detail) {
  const IndexClassification chain = classify_indices(chain_pencil());
  if (chain.zplus != std::vector<int>{1} || chain.zminus != std::vector<int>{2}) {
    detail = "chain classification is off";
    return false;
  }
  const IndexClassification split = classify_indices(split_pencil());
  if (split.plain() != std::vector<int>{1, 2} || !split.z().empty()) {
    detail = "split classification is off";
    return false;
  }

  std::vector<Pencil> pencils = {disc_pencil(), chain_pencil(), split_pencil()};
  Rng rng(401);
  for (int i = 0; i < 100; ++i) pencils.push_back(random_pencil(rng));
  for (std::size_t i = 0; i < pencils.size(); ++i) {
    if (!(classify_indices(pencils[i]) == classify_oracle_grid(pencils[i]))) {
      detail = "oracle mismatch on pencil " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// 5. On the chain pencil, every Moebius-permutation candidate with a center
// of modulus >= 0.1 is refuted with a re-checkable witness; every trivial
// rotation candidate passes.
bool criterion_verify(std::string& detail) {
  const Pencil chain = chain_pencil();
  Rng rng(503);
  for (int trial = 0; trial < 50; ++trial) {
    CandidateAutomorphism c = random_candidate(rng, 2, 0.8);
    if (std::abs(c.b[0]) < 0.1 && std::abs(c.b[1]) < 0.1) {
      c.b[static_cast<std::size_t>(rng.uniform_int(0, 1))] =
          rng.uniform(0.1, 0.8) * std::polar(1.0, rng.uniform(0.0, kTwoPi));
    }
    SamplePlan plan;
    plan.random_interior = 30;
    plan.seed = static_cast<std::uint64_t>(trial);
    const VerifyReport r = verify_automorphism(chain, c, plan);
    if (r.pass) {
      detail = "candidate " + std::to_string(trial) + " was not refuted";
      return false;
    }
    if (!r.witness || !r.witness_input) {
      detail = "refutation without witness on candidate " + std::to_string(trial);
      return false;
    }
    if (membership(chain, *r.witness).verdict != Verdict::Outside) {
      detail = "witness does not re-check Outside on candidate " +
               std::to_string(trial);
      return false;
    }
    if (membership(chain, *r.witness_input).verdict == Verdict::Outside) {
      detail = "witness preimage is not feasible on candidate " +
               std::to_string(trial);
      return false;
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    CandidateAutomorphism c = CandidateAutomorphism::identity(2);
    c.theta = {rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
    SamplePlan plan;
    plan.random_interior = 30;
    plan.seed = static_cast<std::uint64_t>(100 + trial);
    if (!verify_automorphism(chain, c, plan).pass) {
      detail = "trivial rotation candidate " + std::to_string(trial) + " failed";
      return false;
    }
  }
  return true;
}

// 6. The direct-sum detector certifies the split pencil at nu = 1 and
// refutes the chain pencil with a scalar witness.
bool criterion_direct_sum(std::string& detail) {
  DetectorConfig cfg;
  cfg.budget = 500;
  const StructureReport split = detect_direct_sum(split_pencil(), 1, cfg);
  if (split.verdict != StructVerdict::CertifiedAtScale) {
    detail = std::string("split verdict: ") + to_string(split.verdict);
    return false;
  }
  const Pencil chain = chain_pencil();
  const StructureReport r = detect_direct_sum(chain, 1, cfg);
  if (r.verdict != StructVerdict::Refuted || !r.witness) {
    detail = std::string("chain verdict: ") + to_string(r.verdict);
    return false;
  }
  if (r.witness->level() != 1) {
    detail = "chain witness is not scalar";
    return false;
  }
  const bool left_ok =
      membership(chain, project({2}, *r.witness)).verdict == Verdict::Interior;
  const bool right_ok =
      membership(chain, project({1}, *r.witness)).verdict == Verdict::Interior;
  const bool joint_out =
      membership(chain, *r.witness).verdict == Verdict::Outside;
  if (!left_ok || !right_ok || !joint_out) {
    detail = "chain witness does not re-check";
    return false;
  }
  return true;
}

// 7. The polydisc-summand detector certifies {1} on the split pencil and
// refutes it on the chain pencil with a quantitative witness.
bool criterion_polydisc(std::string& detail) {
  DetectorConfig cfg;
  cfg.budget = 500;
  const StructureReport split = detect_polydisc_summand(split_pencil(), {1}, cfg);
  if (split.verdict != StructVerdict::CertifiedAtScale) {
    detail = std::string("split verdict: ") + to_string(split.verdict);
    return false;
  }
  const Pencil chain = chain_pencil();
  const StructureReport r = detect_polydisc_summand(chain, {1}, cfg);
  if (r.verdict != StructVerdict::Refuted || !r.witness) {
    detail = std::string("chain verdict: ") + to_string(r.verdict);
    return false;
  }
  const MembershipVerdict check = membership(chain, *r.witness);
  if (check.verdict != Verdict::Outside || check.margin > -1e-4) {
    std::ostringstream os;
    os << "chain witness margin " << check.margin;
    detail = os.str();
    return false;
  }
  return true;
}

// 8. Affine-linear extraction recovers the centers exactly and the linear
// part as the expected scaled permutation.
bool criterion_extract(std::string& detail) {
  Rng rng(809);
  for (int trial = 0; trial < 50; ++trial) {
    const int g = rng.uniform_int(1, 4);
    const CandidateAutomorphism c = random_candidate(rng, g, 0.85);
    const AffineLinearPart part =
        extract_affine_linear([&c](const MatrixTuple& t) { return eval(c, t); }, g);
    if (!part.scaled_permutation) {
      detail = "linear part not flagged as a scaled permutation";
      return false;
    }
    for (int j = 0; j < g; ++j) {
      if (std::abs(part.constant[static_cast<std::size_t>(j)] -
                   c.b[static_cast<std::size_t>(j)]) > 1e-12) {
        detail = "constant term drifts on trial " + std::to_string(trial);
        return false;
      }
      const Complex expected =
          std::polar(1.0, c.theta[static_cast<std::size_t>(j)]) *
          (1.0 - std::norm(c.b[static_cast<std::size_t>(j)]));
      for (int k = 0; k < g; ++k) {
        const Complex want =
            (k + 1 == c.perm[static_cast<std::size_t>(j)]) ? expected : Complex(0.0);
        if (std::abs(part.linear(j, k) - want) > 1e-10) {
          detail = "linear entry drifts on trial " + std::to_string(trial);
          return false;
        }
      }
    }
  }
  return true;
}

// 9. Symbolic composition matches pointwise composition; power iteration
// stabilizes at the permutation order; the origin orbit is monotone with a
// finite 0.99 crossing.
bool criterion_group_ops(std::string& detail) {
  Rng rng(907);
  for (int trial = 0; trial < 50; ++trial) {
    const int g = rng.uniform_int(1, 3);
    const CandidateAutomorphism outer = random_candidate(rng, g, 0.8);
    const CandidateAutomorphism inner = random_candidate(rng, g, 0.8);
    const CandidateAutomorphism comp = compose(outer, inner);
    for (int pt = 0; pt < 20; ++pt) {
      std::vector<Complex> z;
      for (int j = 0; j < g; ++j) {
        z.push_back(rng.uniform(0.0, 0.7) *
                    std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      }
      std::vector<Complex> inner_z;
      for (int j = 0; j < g; ++j) inner_z.push_back(scalar_eval_coord(inner, j, z));
      for (int j = 0; j < g; ++j) {
        const Complex direct = scalar_eval_coord(outer, j, inner_z);
        const Complex via = scalar_eval_coord(comp, j, z);
        if (std::abs(direct - via) > 1e-10) {
          std::ostringstream os;
          os << "composition mismatch " << std::abs(direct - via);
          detail = os.str();
          return false;
        }
      }
    }
  }

  struct PermCase {
    std::vector<int> perm;
    int order;
  };
  const std::vector<PermCase> cases = {
      {{1, 2, 3}, 1}, {{2, 1}, 2}, {{2, 3, 1}, 3}, {{2, 1, 4, 5, 3}, 6}};
  for (const PermCase& pc : cases) {
    CandidateAutomorphism c =
        CandidateAutomorphism::identity(static_cast<int>(pc.perm.size()));
    c.perm = pc.perm;
    std::vector<int> all;
    for (int j = 1; j <= c.g(); ++j) all.push_back(j);
    const auto [n, psi] = power_stabilize(c, all);
    if (n != pc.order) {
      detail = "power_stabilize returned " + std::to_string(n) + " expected " +
               std::to_string(pc.order);
      return false;
    }
  }

  double prev = 0.0;
  for (int m = 1; m <= 25; ++m) {
    const double v = mobius_origin_orbit(0.5, m);
    if (v <= prev || v >= 1.0) {
      detail = "origin orbit is not strictly increasing inside the disc";
      return false;
    }
    prev = v;
  }
  const int crossing = mobius_orbit_crossing(0.5, 0.99);
  if (mobius_origin_orbit(0.5, crossing) < 0.99 ||
      mobius_origin_orbit(0.5, crossing - 1) >= 0.99) {
    detail = "crossing index is not minimal";
    return false;
  }
  return true;
}

// 10. The truncated Moebius Taylor series evaluates exactly on nilpotent
// shifts, matching the resolvent formula.
bool criterion_series(std::string& detail) {
  Rng rng(1009);
  for (double b : {0.0, 0.3, 0.7}) {
    for (int n = 2; n <= 5; ++n) {
      std::vector<Complex> weights;
      for (int j = 0; j < n; ++j) {
        weights.push_back(rng.uniform(0.3, 1.0) *
                          std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      }
      const MatrixTuple t = nilpotent_shift_family(1, n, {weights});
      const std::vector<Complex> coeffs =
          mobius_coeffs(seed_from_mobius(Complex(b), 0.0), n);
      FreeSeries series;
      series.max_degree = n;
      series.terms[{}] = coeffs[0];
      for (int k = 1; k <= n; ++k) {
        series.terms[std::vector<int>(static_cast<std::size_t>(k), 1)] =
            coeffs[static_cast<std::size_t>(k)];
      }
      const Matrix via_series = eval_free_series(series, t);
      const Matrix direct = mobius_matrix(Complex(b), 0.0, t.coords[0]);
      const double err = op_norm(via_series - direct);
      if (err > 1e-10) {
        std::ostringstream os;
        os << "series error " << err << " at b " << b << " degree " << n;
        detail = os.str();
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  Gate gate;
  std::string detail;

  detail.clear();
  gate.report(1, criterion_symmetry(detail),
              "membership invariant under the symmetry group actions", detail);
  detail.clear();
  gate.report(2, criterion_scaling(detail),
              "interior scalar times contraction stays in the closed set", detail);
  detail.clear();
  gate.report(3, criterion_caratheodory(detail),
              "extreme Toeplitz completions have norm one and are rigid", detail);
  detail.clear();
  gate.report(4, criterion_classify(detail),
              "index classification matches the grid oracle", detail);
  detail.clear();
  gate.report(5, criterion_verify(detail),
              "chain refutes off-center candidates and passes rotations", detail);
  detail.clear();
  gate.report(6, criterion_direct_sum(detail),
              "direct-sum detector separates split from chain", detail);
  detail.clear();
  gate.report(7, criterion_polydisc(detail),
              "polydisc-summand detector separates split from chain", detail);
  detail.clear();
  gate.report(8, criterion_extract(detail),
              "affine-linear extraction recovers centers and scaled permutation",
              detail);
  detail.clear();
  gate.report(9, criterion_group_ops(detail),
              "composition, power stabilization, and orbit crossing", detail);
  detail.clear();
  gate.report(10, criterion_series(detail),
              "truncated Moebius series is exact on nilpotent shifts", detail);

  if (gate.failed != 0) {
    std::cout << gate.failed << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
