#include <benchmark/benchmark.h>

#include <vector>

#include "interlace/eigensolve.hpp"
#include "interlace/forward.hpp"
#include "interlace/inverse.hpp"
#include "interlace/rng.hpp"
#include "interlace/secular.hpp"

using namespace interlace;

namespace {

OrderedSpectrum make_spectrum(std::size_t n) {
  RandomSource rng(7);
  std::vector<double> values(n);
  double x = 0.0;
  for (double& v : values) {
    v = x;
    x += rng.uniform(0.5, 1.5);
  }
  return OrderedSpectrum::strict(std::move(values));
}

std::vector<double> make_weights(std::size_t n) {
  RandomSource rng(13);
  std::vector<double> w(n);
  for (double& x : w) x = rng.uniform(0.2, 2.0);
  return w;
}

void SecularRankOne(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto lambda = make_spectrum(n);
  const auto weights = make_weights(n);
  for (auto _ : state) {
    auto roots = secular_roots_rank_one({lambda, weights, {}});
    benchmark::DoNotOptimize(roots);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SecularRankOne)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void SecularArrowhead(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto lambda = make_spectrum(n);
  const auto weights = make_weights(n);
  for (auto _ : state) {
    auto roots = secular_roots_arrowhead({lambda, weights, 0.5});
    benchmark::DoNotOptimize(roots);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SecularArrowhead)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void DenseJacobiRankOne(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto lambda = make_spectrum(n);
  auto weights = make_weights(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sqrt(weights[i]);
  const RealMatrix t = assemble_rank_one(lambda, v);
  for (auto _ : state) {
    auto dec = eig_hermitian(t);
    benchmark::DoNotOptimize(dec);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(DenseJacobiRankOne)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void ClosedFormInverse(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto lambda = make_spectrum(n);
  auto weights = make_weights(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sqrt(weights[i]);
  const auto mu = forward_rank_one(lambda, FieldVector::make_real(v));
  for (auto _ : state) {
    auto p = invert_rank_one_closed(lambda, mu);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(ClosedFormInverse)->RangeMultiplier(2)->Range(4, 32);

void ContinuationInverse(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto lambda = make_spectrum(n);
  auto weights = make_weights(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sqrt(weights[i]);
  const auto mu = forward_rank_one(lambda, FieldVector::make_real(v));
  for (auto _ : state) {
    auto sol = invert_rank_one_continuation(lambda, mu);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(ContinuationInverse)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
