#pragma once

#include "freespec/pencil.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace freespec {

/// Seeded random source; every sampling routine threads one of these so
/// runs are reproducible from the reported seed.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  Complex gaussian();               // standard complex Gaussian
};

/// n x m matrix of independent standard complex Gaussians.
Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed unitary via QR of a Ginibre matrix.
Matrix random_unitary(Rng& rng, Eigen::Index n);

/// Random matrix rescaled to operator norm `rho`.
Matrix random_contraction(Rng& rng, Eigen::Index n, double rho = 1.0);

/// Random tuple of g matrices at level n, each of norm at most `scale`.
MatrixTuple random_tuple(Rng& rng, int g, Eigen::Index n, double scale);

/// Random pencil with g in 1..max_g and dimensions in 1..max_dim,
/// blocks drawn Ginibre and rescaled to norm one.
Pencil random_pencil(Rng& rng, int max_g = 4, Eigen::Index max_dim = 3);

/// Rejection-samples an Interior tuple at the given level by shrinking
/// random tuples toward zero; nullopt if the attempt budget runs out.
std::optional<MatrixTuple> random_interior_tuple(const Pencil& p, Rng& rng,
                                                 Eigen::Index level,
                                                 int attempts = 200);

}  // namespace freespec
