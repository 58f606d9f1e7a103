// Microbenchmarks for the hot paths: rotation matrices, transforms, norms,
// and the level functional.

#include "homfour/kernels.hpp"
#include "homfour/multiplier.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

using namespace homfour;

namespace {

std::shared_ptr<const QuadratureRule> su2_rule(int res) {
  static std::map<int, std::shared_ptr<const QuadratureRule>> cache;
  auto& slot = cache[res];
  if (!slot) slot = std::make_shared<QuadratureRule>(haar_quadrature(Backend::SU2, res));
  return slot;
}

CoefficientField random_field(double L) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::RandomBandlimited;
  spec.backend = Backend::SU2;
  spec.L = L;
  spec.seed = 7;
  return synthesize_family(spec, spectral_eig(Backend::SU2, L));
}

}  // namespace

static void BM_WignerLittleD(benchmark::State& state) {
  const double l = state.range(0) / 2.0;
  double beta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_little_d(l, beta));
    beta += 1e-6;  // defeat caching of a fixed angle
  }
}
BENCHMARK(BM_WignerLittleD)->Arg(5)->Arg(21)->Arg(61);

static void BM_ForwardTransform(benchmark::State& state) {
  const double L = static_cast<double>(state.range(0));
  const auto rule = su2_rule(48);
  const SampledFunction f = inverse_transform(random_field(L), rule);
  const double cut = spectral_eig(Backend::SU2, L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_transform(f, cut));
  }
}
BENCHMARK(BM_ForwardTransform)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_InverseTransform(benchmark::State& state) {
  const double L = static_cast<double>(state.range(0));
  const auto rule = su2_rule(48);
  const CoefficientField sigma = random_field(L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_transform(sigma, rule));
  }
}
BENCHMARK(BM_InverseTransform)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_CentralNorm(benchmark::State& state) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::MonotoneCentral;
  spec.backend = Backend::SU2;
  spec.alpha = 2.0;
  spec.L = static_cast<double>(state.range(0));
  const CoefficientField sigma = synthesize_family(spec, 1e9);
  const LpNorm norm = central_norm_source();
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm(sigma, 1.7));
  }
}
BENCHMARK(BM_CentralNorm)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SchattenNorm(benchmark::State& state) {
  const CoefficientField sigma = random_field(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_norm_schatten(sigma, 1.5));
  }
}
BENCHMARK(BM_SchattenNorm)->Arg(8)->Arg(16);

static void BM_LevelSup(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> atoms(state.range(0));
  for (auto& [v, w] : atoms) {
    v = u(rng);
    w = 1.0 + u(rng);
  }
  for (auto _ : state) {
    auto copy = atoms;
    benchmark::DoNotOptimize(level_sup(std::move(copy), 1.0 / 3.0));
  }
}
BENCHMARK(BM_LevelSup)->Arg(1000)->Arg(100000);

static void BM_DirichletClosed(benchmark::State& state) {
  double t = 0.1234;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_kernel(40.0, t, DirichletMethod::Closed));
    t += 1e-7;
  }
}
BENCHMARK(BM_DirichletClosed);

BENCHMARK_MAIN();
