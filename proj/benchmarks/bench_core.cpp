#include <benchmark/benchmark.h>

#include "mocklab/classical.hpp"
#include "mocklab/mock_family.hpp"
#include "mocklab/primes.hpp"

namespace {

namespace mock = mocklab::mock;

const mock::ShadowParams& params() {
  static const auto p = mock::validate_params(1, 6, 0, 1);
  return p;
}

void BM_CoefficientClosedForm(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mock::coefficient_closed_form(params(), n).c);
  }
}
BENCHMARK(BM_CoefficientClosedForm)->Arg(1'000'003)->Arg(4'000'012)->Arg(999'999'999'989)->Arg(600'851'475'143);

void BM_CoefficientLambert(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mock::coefficient_lambert(params(), n));
  }
}
BENCHMARK(BM_CoefficientLambert)->Arg(1'000'003)->Arg(4'000'012)->Arg(1'000'000'007);

void BM_ProductSeriesThm1(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mock::product_series_thm1(params(), state.range(0)));
  }
}
BENCHMARK(BM_ProductSeriesThm1)->Arg(100)->Arg(400)->Arg(1600);

void BM_ProductSeriesClosed(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mock::product_series_closed(params(), state.range(0)));
  }
}
BENCHMARK(BM_ProductSeriesClosed)->Arg(100)->Arg(400)->Arg(1600);

void BM_PartitionSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mocklab::qseries::partition_series(state.range(0)));
  }
}
BENCHMARK(BM_PartitionSeries)->Arg(500)->Arg(2000);

void BM_Factorize(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mocklab::primes::factorize(n));
  }
}
BENCHMARK(BM_Factorize)->Arg(600'851'475'143)->Arg(1'000'003LL * 1'000'033LL)->Arg(4'294'967'291LL * 65'521LL);

}  // namespace

BENCHMARK_MAIN();
