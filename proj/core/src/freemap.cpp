#include "freespec/freemap.hpp"

#include "freespec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace freespec {

namespace {

// 2x2 representative of z -> m_b(e^{i theta} z) acting by fractional
// linear transformation; composition of maps is the matrix product.
Eigen::Matrix2cd mobius_rep(Complex b, double theta) {
  const Complex w = std::polar(1.0, theta);
  Eigen::Matrix2cd m;
  m << w, b, std::conj(b) * w, Complex(1.0);
  return m;
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (int j = 1; j <= static_cast<int>(perm.size()); ++j) {
    inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(j - 1)] - 1)] = j;
  }
  return inv;
}

bool perm_identity_on(const std::vector<int>& perm,
                      const std::vector<int>& subset) {
  for (int j : subset) {
    if (perm[static_cast<std::size_t>(j - 1)] != j) return false;
  }
  return true;
}

}  // namespace

bool CandidateAutomorphism::has_higher() const {
  for (const FreeSeries& s : higher) {
    if (!s.terms.empty()) return true;
  }
  return false;
}

CandidateAutomorphism CandidateAutomorphism::identity(int g) {
  CandidateAutomorphism c;
  c.perm.resize(static_cast<std::size_t>(g));
  for (int j = 1; j <= g; ++j) c.perm[static_cast<std::size_t>(j - 1)] = j;
  c.theta.assign(static_cast<std::size_t>(g), 0.0);
  c.b.assign(static_cast<std::size_t>(g), Complex(0.0));
  return c;
}

void validate(const CandidateAutomorphism& c) {
  const int g = c.g();
  if (g < 1) throw std::invalid_argument("candidate: empty");
  if (static_cast<int>(c.theta.size()) != g ||
      static_cast<int>(c.b.size()) != g) {
    throw std::invalid_argument("candidate: field lengths disagree");
  }
  std::vector<bool> seen(static_cast<std::size_t>(g), false);
  for (int v : c.perm) {
    if (v < 1 || v > g || seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("candidate: perm is not a bijection of 1..g");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  for (Complex bj : c.b) {
    if (std::abs(bj) >= 1.0) {
      throw std::invalid_argument("candidate: center outside the open disc");
    }
  }
  if (!c.higher.empty() && static_cast<int>(c.higher.size()) != g) {
    throw std::invalid_argument("candidate: need one higher series per coordinate");
  }
  for (int j = 1; j <= static_cast<int>(c.higher.size()); ++j) {
    const int own = c.perm[static_cast<std::size_t>(j - 1)];
    for (const auto& [word, coeff] : c.higher[static_cast<std::size_t>(j - 1)].terms) {
      if (word.size() < 2) {
        throw std::invalid_argument("candidate: higher word of length < 2");
      }
      const bool pure_own = std::all_of(word.begin(), word.end(),
                                        [own](int l) { return l == own; });
      if (pure_own) {
        throw std::invalid_argument(
            "candidate: higher word is a pure power of the own letter");
      }
      for (int l : word) {
        if (l < 1 || l > g) {
          throw std::invalid_argument("candidate: higher word letter out of range");
        }
      }
    }
  }
}

Matrix mobius_matrix(Complex b, double theta, const Matrix& x) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("mobius_matrix: matrix not square");
  }
  const Complex w = std::polar(1.0, theta);
  const Eigen::Index n = x.rows();
  const Matrix numer = b * Matrix::Identity(n, n) + w * x;
  const Matrix denom = Matrix::Identity(n, n) + std::conj(b) * w * x;
  Eigen::JacobiSVD<Matrix> svd(denom, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12) {
    throw std::runtime_error("mobius_matrix: resolvent near-singular");
  }
  return numer * svd.solve(Matrix::Identity(n, n));
}

MatrixTuple eval(const CandidateAutomorphism& c, const MatrixTuple& x,
                 bool strict) {
  validate(c);
  if (x.g() != c.g()) {
    throw std::invalid_argument("eval: tuple coordinate count mismatch");
  }
  MatrixTuple out;
  out.coords.reserve(static_cast<std::size_t>(c.g()));
  for (int j = 1; j <= c.g(); ++j) {
    const int k = c.perm[static_cast<std::size_t>(j - 1)];
    Matrix coord = mobius_matrix(c.b[static_cast<std::size_t>(j - 1)],
                                 c.theta[static_cast<std::size_t>(j - 1)],
                                 x.coords[static_cast<std::size_t>(k - 1)]);
    if (!c.higher.empty() &&
        !c.higher[static_cast<std::size_t>(j - 1)].terms.empty()) {
      coord += eval_free_series(c.higher[static_cast<std::size_t>(j - 1)], x,
                                strict);
    }
    out.coords.push_back(std::move(coord));
  }
  return out;
}

AffineLinearPart extract_affine_linear(const FreeMapFn& f, int g) {
  if (g < 1) throw std::invalid_argument("extract_affine_linear: g must be >= 1");
  AffineLinearPart out;
  const MatrixTuple zero = MatrixTuple::zero(g, 2);
  const MatrixTuple at_zero = f(zero);
  if (at_zero.g() != g) {
    throw std::runtime_error("extract_affine_linear: map changed coordinate count");
  }
  out.constant.resize(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) {
    out.constant[static_cast<std::size_t>(j)] =
        at_zero.coords[static_cast<std::size_t>(j)](0, 0);
  }
  out.linear = Matrix::Zero(g, g);
  for (int k = 1; k <= g; ++k) {
    MatrixTuple probe = MatrixTuple::zero(g, 2);
    probe.coords[static_cast<std::size_t>(k - 1)](0, 1) = 1.0;
    const MatrixTuple image = f(probe);
    for (int j = 0; j < g; ++j) {
      out.linear(j, k - 1) = image.coords[static_cast<std::size_t>(j)](0, 1);
    }
  }
  out.scaled_permutation = true;
  for (int i = 0; i < g && out.scaled_permutation; ++i) {
    int row_hits = 0;
    int col_hits = 0;
    for (int j = 0; j < g; ++j) {
      if (std::abs(out.linear(i, j)) > 1e-10) ++row_hits;
      if (std::abs(out.linear(j, i)) > 1e-10) ++col_hits;
    }
    if (row_hits != 1 || col_hits != 1) out.scaled_permutation = false;
  }
  return out;
}

std::vector<int> fixed_support(const CandidateAutomorphism& c, double tol) {
  std::vector<int> out;
  for (int j = 1; j <= c.g(); ++j) {
    if (std::abs(c.b[static_cast<std::size_t>(j - 1)]) > tol) out.push_back(j);
  }
  return out;
}

CandidateAutomorphism normalize(const CandidateAutomorphism& c) {
  validate(c);
  const int g = c.g();
  std::vector<Complex> gamma(static_cast<std::size_t>(g), Complex(1.0));
  for (int j = 0; j < g; ++j) {
    const Complex bj = c.b[static_cast<std::size_t>(j)];
    if (std::abs(bj) > 0.0) gamma[static_cast<std::size_t>(j)] = std::conj(bj) / std::abs(bj);
  }
  const std::vector<int> inv = inverse_perm(c.perm);
  std::vector<Complex> alpha(static_cast<std::size_t>(g));
  for (int k = 1; k <= g; ++k) {
    const int j = inv[static_cast<std::size_t>(k - 1)];
    alpha[static_cast<std::size_t>(k - 1)] =
        std::polar(1.0, -c.theta[static_cast<std::size_t>(j - 1)]) *
        std::conj(gamma[static_cast<std::size_t>(j - 1)]);
  }

  CandidateAutomorphism out = c;
  for (int j = 0; j < g; ++j) {
    out.b[static_cast<std::size_t>(j)] =
        std::abs(c.b[static_cast<std::size_t>(j)]);
    out.theta[static_cast<std::size_t>(j)] = 0.0;
  }
  // psi_j(x) = gamma_j * h_j(alpha . x): each word coefficient picks up
  // gamma_j times the product of the alpha's along the word
  for (int j = 0; j < static_cast<int>(out.higher.size()); ++j) {
    FreeSeries scaled;
    scaled.max_degree = out.higher[static_cast<std::size_t>(j)].max_degree;
    for (const auto& [word, coeff] : c.higher[static_cast<std::size_t>(j)].terms) {
      Complex factor = gamma[static_cast<std::size_t>(j)];
      for (int letter : word) factor *= alpha[static_cast<std::size_t>(letter - 1)];
      scaled.terms[word] = coeff * factor;
    }
    out.higher[static_cast<std::size_t>(j)] = std::move(scaled);
  }
  return out;
}

CandidateAutomorphism compose(const CandidateAutomorphism& outer,
                              const CandidateAutomorphism& inner) {
  validate(outer);
  validate(inner);
  if (outer.g() != inner.g()) {
    throw std::invalid_argument("compose: coordinate count mismatch");
  }
  if (outer.has_higher() || inner.has_higher()) {
    throw std::invalid_argument(
        "compose: symbolic composition requires pure Moebius-permutation candidates");
  }
  const int g = outer.g();
  CandidateAutomorphism out = CandidateAutomorphism::identity(g);
  for (int j = 1; j <= g; ++j) {
    const int k = outer.perm[static_cast<std::size_t>(j - 1)];
    out.perm[static_cast<std::size_t>(j - 1)] =
        inner.perm[static_cast<std::size_t>(k - 1)];
    const Eigen::Matrix2cd m =
        mobius_rep(outer.b[static_cast<std::size_t>(j - 1)],
                   outer.theta[static_cast<std::size_t>(j - 1)]) *
        mobius_rep(inner.b[static_cast<std::size_t>(k - 1)],
                   inner.theta[static_cast<std::size_t>(k - 1)]);
    const Complex center = m(0, 1) / m(1, 1);
    const Complex deriv = m.determinant() / (m(1, 1) * m(1, 1));
    Complex phase = deriv / (1.0 - std::norm(center));
    phase /= std::abs(phase);
    out.b[static_cast<std::size_t>(j - 1)] = center;
    out.theta[static_cast<std::size_t>(j - 1)] = std::arg(phase);
  }
  return out;
}

std::pair<int, CandidateAutomorphism> power_stabilize(
    const CandidateAutomorphism& c, const std::vector<int>& plain_indices) {
  validate(c);
  if (c.has_higher()) {
    throw std::invalid_argument("power_stabilize: higher terms not supported");
  }
  long long cap = 1;
  for (int j = 2; j <= c.g(); ++j) cap *= j;
  CandidateAutomorphism psi = c;
  for (int n = 1; n <= cap; ++n) {
    if (perm_identity_on(psi.perm, plain_indices)) {
      const CandidateAutomorphism psi2 = compose(psi, psi);
      const CandidateAutomorphism psi3 = compose(psi, psi2);
      const auto f1 = fixed_support(psi);
      if (f1 == fixed_support(psi2) && f1 == fixed_support(psi3)) {
        return {n, psi};
      }
    }
    psi = compose(c, psi);
  }
  throw std::runtime_error(
      "power_stabilize: no stable power within g! iterations");
}

double mobius_origin_orbit(double b, int m) {
  if (b < 0.0 || b >= 1.0) {
    throw std::invalid_argument("mobius_origin_orbit: need 0 <= b < 1");
  }
  if (m < 0) throw std::invalid_argument("mobius_origin_orbit: m must be >= 0");
  double z = 0.0;
  for (int i = 0; i < m; ++i) z = (b + z) / (1.0 + b * z);
  return z;
}

int mobius_orbit_crossing(double b, double lambda, int max_iter) {
  double z = 0.0;
  for (int m = 1; m <= max_iter; ++m) {
    z = (b + z) / (1.0 + b * z);
    if (z >= lambda) return m;
  }
  throw std::runtime_error("mobius_orbit_crossing: threshold not reached");
}

VerifyReport verify_automorphism(const Pencil& p,
                                 const CandidateAutomorphism& c,
                                 const SamplePlan& plan) {
  validate(c);
  if (c.g() != p.g()) {
    throw std::invalid_argument("verify_automorphism: coordinate count mismatch");
  }
  VerifyReport report;
  report.worst_margin = 1.0;

  std::vector<std::pair<std::string, MatrixTuple>> inputs;
  Rng rng(plan.seed);
  const int per_level =
      plan.levels.empty()
          ? 0
          : std::max(1, plan.random_interior /
                            static_cast<int>(plan.levels.size()));
  for (int level : plan.levels) {
    for (int i = 0; i < per_level; ++i) {
      auto t = random_interior_tuple(p, rng, level);
      if (t) inputs.emplace_back("random-interior", std::move(*t));
    }
  }
  for (MatrixTuple& t : all_structured_tuples(p, plan.eps)) {
    inputs.emplace_back("structured", std::move(t));
  }
  {
    std::vector<std::vector<Complex>> ones(
        static_cast<std::size_t>(p.g()), std::vector<Complex>(2, Complex(1.0)));
    inputs.emplace_back("nilpotent-shift", nilpotent_shift_family(p.g(), 2, ones));
  }

  for (auto& [kind, t] : inputs) {
    SampleResult sample;
    sample.kind = kind;
    const MembershipVerdict before = membership(p, t);
    sample.input_verdict = before.verdict;
    sample.input_margin = before.margin;
    if (before.verdict == Verdict::Outside) {
      // the candidate only has to preserve the closed set
      report.samples.push_back(std::move(sample));
      continue;
    }
    ++report.samples_run;
    MatrixTuple image;
    try {
      image = eval(c, t);
    } catch (const std::exception& e) {
      sample.ok = false;
      sample.error = e.what();
      ++report.eval_errors;
      report.samples.push_back(std::move(sample));
      continue;
    }
    const MembershipVerdict after = membership(p, image);
    sample.output_verdict = after.verdict;
    sample.output_margin = after.margin;
    report.worst_margin = std::min(report.worst_margin, after.margin);
    const bool bad =
        after.verdict == Verdict::Outside ||
        (before.verdict == Verdict::Boundary && after.verdict != Verdict::Boundary);
    if (bad) {
      sample.ok = false;
      ++report.failures;
      report.pass = false;
      if (!report.witness) {
        report.witness = image;
        report.witness_input = t;
      }
    }
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace freespec
