#include <benchmark/benchmark.h>

#include "musielak/modular.hpp"
#include "musielak/nfunction.hpp"
#include "musielak/norms.hpp"
#include "musielak/smoothing.hpp"

namespace {

using namespace musielak;

GridFunction tent(int n) {
  const GridSpec spec(1, {-5.0}, {5.0}, n);
  return sample(ClosedForm::tent({-2.0}, 1.0), spec);
}

void BM_FractionalModular(benchmark::State& state) {
  const NFunction nf = NFunction::power(2.0);
  const GridFunction u = tent(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FractionalModular j(nf, u, 0.25);
    benchmark::DoNotOptimize(j(1.0));
  }
}
BENCHMARK(BM_FractionalModular)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_FractionalModularVariable(benchmark::State& state) {
  const NFunction nf = NFunction::variable_exponent({2.5, 0.5, 1.0});
  const GridFunction u = tent(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FractionalModular j(nf, u, 0.25);
    benchmark::DoNotOptimize(j(1.0));
  }
}
BENCHMARK(BM_FractionalModularVariable)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Conjugate(benchmark::State& state) {
  const Profile profile{Family::Orlicz, 2.0, 1.0};
  double tau = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugate(profile, tau));
    tau = tau < 100.0 ? tau * 1.1 : 0.5;
  }
}
BENCHMARK(BM_Conjugate);

void BM_Mollify(benchmark::State& state) {
  const GridFunction u = tent(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mollify(u, 0.25));
}
BENCHMARK(BM_Mollify)->Arg(1025)->Arg(4097)->Unit(benchmark::kMicrosecond);

void BM_Luxemburg(benchmark::State& state) {
  const NFunction nf = NFunction::orlicz(2.0);
  const GridFunction u = tent(4097);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(nf, u).value);
}
BENCHMARK(BM_Luxemburg)->Unit(benchmark::kMicrosecond);

void BM_Seminorm(benchmark::State& state) {
  const NFunction nf = NFunction::power(2.0);
  const GridFunction u = tent(257);
  for (auto _ : state) benchmark::DoNotOptimize(gagliardo_seminorm(nf, u, 0.25).value);
}
BENCHMARK(BM_Seminorm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
