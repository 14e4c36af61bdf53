// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "rlie/enveloping.hpp"
#include "rlie/fp_linalg.hpp"
#include "rlie/restricted_lie.hpp"
#include "rlie/tensor_bialgebra.hpp"

using namespace rlie;

namespace {

FpMatrix random_matrix(std::size_t n, std::uint64_t p) {
  const PrimeField f(p);
  std::mt19937_64 rng(n);
  FpMatrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m.set(r, c, static_cast<std::int64_t>(rng() % p));
    }
  }
  return m;
}

void BM_RrefParallel(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 65521);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rref(m).rank);
  }
}

void BM_RrefSerial(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 65521);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::rref_serial(m).rank);
  }
}

void BM_PrimitivesBlocked(benchmark::State& state) {
  const TensorContext ctx{PrimeField(3), 2, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(primitive_basis(ctx, ctx.max_degree).size());
  }
}

void BM_PrimitivesUnblocked(benchmark::State& state) {
  const TensorContext ctx{PrimeField(3), 2, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::primitive_basis_unblocked(ctx, ctx.max_degree).size());
  }
}

void BM_RestrictedPrimitivesSl2(benchmark::State& state) {
  const PrimeField f(5);
  RestrictedLieAlgebra::BracketTable b;
  b.emplace(std::pair<std::size_t, std::size_t>{0, 1}, LieElement::unit(f, 3, 0).scaled(3));
  b.emplace(std::pair<std::size_t, std::size_t>{0, 2}, LieElement::unit(f, 3, 1));
  b.emplace(std::pair<std::size_t, std::size_t>{1, 2}, LieElement::unit(f, 3, 2).scaled(3));
  std::vector<LieElement> pmap(3, LieElement(f, 3));
  pmap[1] = LieElement::unit(f, 3, 1);
  const EnvelopingAlgebra env(RestrictedLieAlgebra(f, {"e", "h", "f"}, b, pmap));
  for (auto _ : state) {
    benchmark::DoNotOptimize(restricted_primitives(env).dim());
  }
}

}  // namespace

BENCHMARK(BM_RrefParallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefSerial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimitivesBlocked)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimitivesUnblocked)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RestrictedPrimitivesSl2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
