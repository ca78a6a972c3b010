#include "freespec/caratheodory.hpp"
#include "freespec/classify.hpp"
#include "freespec/pencil.hpp"
#include "freespec/sampling.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace freespec;

Pencil bench_pencil(int g, Eigen::Index d) {
  Rng rng(7);
  std::vector<Eigen::Index> dims(static_cast<std::size_t>(g) + 1, d);
  std::vector<Matrix> blocks;
  for (int j = 0; j < g; ++j) blocks.push_back(ginibre(rng, d, d));
  return build_pencil(dims, blocks, true);
}

void bm_kron(benchmark::State& state) {
  Rng rng(11);
  const Eigen::Index n = state.range(0);
  const Matrix a = ginibre(rng, n, n);
  const Matrix b = ginibre(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(bm_kron)->Arg(4)->Arg(8)->Arg(16);

void bm_l_eval(benchmark::State& state) {
  const Pencil p = bench_pencil(3, 3);
  Rng rng(13);
  const MatrixTuple x = random_tuple(rng, 3, state.range(0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(l_eval(p, x));
}
BENCHMARK(bm_l_eval)->Arg(2)->Arg(4)->Arg(8);

void bm_membership(benchmark::State& state) {
  const Pencil p = bench_pencil(3, 3);
  Rng rng(17);
  const MatrixTuple x = random_tuple(rng, 3, state.range(0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(membership(p, x));
}
BENCHMARK(bm_membership)->Arg(2)->Arg(4)->Arg(8);

void bm_extreme_toeplitz(benchmark::State& state) {
  WeightedShift shift;
  shift.weights.assign(static_cast<std::size_t>(state.range(0)), Complex(1.0));
  const MobiusSeed seed{Complex(0.4, 0.2), 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(extreme_toeplitz(seed, shift));
}
BENCHMARK(bm_extreme_toeplitz)->Arg(4)->Arg(16)->Arg(64);

void bm_classify(benchmark::State& state) {
  const Pencil p = bench_pencil(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_indices(p));
}
BENCHMARK(bm_classify)->Arg(2)->Arg(4);

}  // namespace
