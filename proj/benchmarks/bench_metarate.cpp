#include <benchmark/benchmark.h>

#include "metarate/bounds.hpp"
#include "metarate/iterations.hpp"
#include "metarate/oracle.hpp"

using namespace metarate;

namespace {

const Caps caps;

PwlFunction tent() {
  return PwlFunction({{UnitRational::zero(), UnitRational::zero()},
                      {UnitRational(1, 2), UnitRational::one()},
                      {UnitRational::one(), UnitRational::zero()}});
}

void BM_KmBound(benchmark::State& state) {
  const PosRational eps(1, state.range(0));
  const Modulus w{PosRational(1, 2)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        km_bound(eps, CounterFunc::constant(Nat(2)), w, Rate::harmonic(), caps));
  }
}
BENCHMARK(BM_KmBound)->Arg(2)->Arg(4)->Arg(8);

void BM_LipschitzBound(benchmark::State& state) {
  const PosRational eps(1, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lipschitz_bound(eps, CounterFunc::constant(Nat(2)),
                                             PosRational(1, 2), caps));
  }
}
BENCHMARK(BM_LipschitzBound)->Arg(2)->Arg(4)->Arg(8);

void BM_RunIteration(benchmark::State& state) {
  const PwlFunction f = tent();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_iteration(Scheme::km, f,
                                           ParamSchedule::harmonic(), std::nullopt,
                                           UnitRational(1, 7),
                                           state.range(0), caps));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunIteration)->Arg(100)->Arg(400)->Arg(1600)->Complexity();

void BM_OracleScan(benchmark::State& state) {
  // Worst case: the 0,1 oscillator rejects every window start.
  std::vector<UnitRational> xs;
  for (std::int64_t i = 0; i < state.range(0) + 8; ++i)
    xs.push_back(i % 2 == 0 ? UnitRational::zero() : UnitRational::one());
  const CounterFunc g = CounterFunc::constant(Nat(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        least_metastable(xs, PosRational(1, 64), g, state.range(0)));
  }
}
BENCHMARK(BM_OracleScan)->Arg(100)->Arg(400)->Arg(1600);

}  // namespace

BENCHMARK_MAIN();
