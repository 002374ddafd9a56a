#include <benchmark/benchmark.h>

#include "cantor/enumerate.hpp"
#include "cantor/kernels.hpp"

using namespace cantor;

namespace {

KRSequence two_odometer() {
  auto s = System::odometer({}, {2});
  return KRSequence(s, Point(s.space(), {}, {0}));
}

std::vector<Clopen> level3_clopens(const System& s) {
  const auto words = s.space()->words(3);
  std::vector<Clopen> all;
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<Word> keep;
    for (std::size_t i = 0; i < 8; ++i)
      if (mask >> i & 1) keep.push_back(words[i]);
    all.push_back(make_canonical(s.space(), 3, keep));
  }
  return all;
}

void BM_CensusSerial(benchmark::State& st) {
  auto seq = two_odometer();
  for (auto _ : st) benchmark::DoNotOptimize(gamma_census_serial(seq, st.range(0)));
}

void BM_CensusParallel(benchmark::State& st) {
  auto seq = two_odometer();
  for (auto _ : st) benchmark::DoNotOptimize(gamma_census_parallel(seq, st.range(0)));
}

void BM_OrbitTableSerial(benchmark::State& st) {
  auto seq = two_odometer();
  const auto all = level3_clopens(seq.system());
  for (auto _ : st) benchmark::DoNotOptimize(orbit_table_serial(seq, all, 3));
}

void BM_OrbitTableParallel(benchmark::State& st) {
  auto seq = two_odometer();
  const auto all = level3_clopens(seq.system());
  for (auto _ : st) benchmark::DoNotOptimize(orbit_table_parallel(seq, all, 3));
}

void BM_DecodeCodes(benchmark::State& st) {
  const auto s = System::odometer({}, {2});
  for (auto _ : st) benchmark::DoNotOptimize(enum_tfg(s, 0, st.range(0), false));
}

}  // namespace

BENCHMARK(BM_CensusSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitTableParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeCodes)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
