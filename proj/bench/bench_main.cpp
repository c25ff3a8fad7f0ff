// Batch checking: serial reference vs the OpenMP loop; plus single-solve
// timings on compressed inputs.

#include <benchmark/benchmark.h>

#include "cwp/check.hpp"
#include "cwp/solvers.hpp"
#include "support.hpp"

using namespace cwp;

namespace {

GenConfig family(int f) {
  GenConfig c;
  c.family = f == 0 ? GenFamily::hnn : GenFamily::amalgam;
  if (f == 1) c.max_length = 2000;
  return c;
}

void BM_check_serial(benchmark::State& state) {
  GenConfig c = family(static_cast<int>(state.range(0)));
  auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(check_serial(c, 1, n, SolveConfig{}, c.max_length));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_check_parallel(benchmark::State& state) {
  GenConfig c = family(static_cast<int>(state.range(0)));
  auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(check_parallel(c, 1, n, SolveConfig{}, c.max_length));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

// (t^-1 a t a)^(2^k) over <a, t | a^2, t^-1 a t = a>.
void BM_stress(benchmark::State& state) {
  auto f = testing::z2_fixture();
  Store& s = *f.store;
  NodeId w = testing::power_of_two(s, s.word(f.explicit_word("t^-1 a t a")), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    Context ctx;
    benchmark::DoNotOptimize(cwp::cwp(f.group, {f.store, w}, ctx).trivial);
  }
}

// t^(2^k) b2 t^-(2^k) b2 over <Z/4, t | t^-1 b2 t = b2>.
void BM_conjugate(benchmark::State& state) {
  auto f = testing::z4_fixture();
  Store& s = *f.store;
  auto k = static_cast<unsigned>(state.range(0));
  NodeId up = testing::power_of_two(s, s.term(f.sym("t")), k);
  NodeId b2 = s.term(f.sym("b2"));
  NodeId w = s.pair(s.pair(up, b2), s.pair(s.invert(up), b2));
  for (auto _ : state) {
    Context ctx;
    benchmark::DoNotOptimize(cwp::cwp(f.group, {f.store, w}, ctx).trivial);
  }
}

void BM_free_inverse_pair(benchmark::State& state) {
  auto f = testing::fixture(R"({"kind":"free","generators":["a","b"]})");
  Store& s = *f.store;
  NodeId w = testing::power_of_two(s, s.word(f.explicit_word("a b")), static_cast<unsigned>(state.range(0)));
  NodeId ww = s.pair(w, s.invert(w));
  for (auto _ : state) {
    Context ctx;
    benchmark::DoNotOptimize(cwp::cwp(f.group, {f.store, ww}, ctx).trivial);
  }
}

}  // namespace

BENCHMARK(BM_check_serial)->Args({0, 100})->Args({1, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_parallel)->Args({0, 100})->Args({1, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stress)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conjugate)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_free_inverse_pair)->Arg(10)->Arg(29)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
