// Serial reference vs OpenMP kernels of the brute-force oracle.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "logcap/instance_io.hpp"
#include "logcap/oracle.hpp"
#include "logcap/verifier.hpp"

using namespace logcap;

namespace {

const std::filesystem::path kRoot = LOGCAP_SOURCE_DIR;

const Instance& instance(int which) {
  static const Instance klein = load_instance(kRoot / "fixtures" / "klein_boundary.json");
  static const Instance l3 = load_instance(kRoot / "corpus" / "l3" / "l3_n3_G3_A3x3_0000.json");
  return which == 0 ? klein : l3;
}

void commutators(benchmark::State& state, Exec exec) {
  const Instance& inst = instance(static_cast<int>(state.range(0)));
  const UTable t(inst);
  for (auto _ : state) benchmark::DoNotOptimize(commutator_indicator(t, false, exec));
  state.counters["U"] = t.size();
}

void oracle(benchmark::State& state, Exec exec) {
  const Instance& inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_group(inst, kDefaultOracleBound, exec));
}

void verify(benchmark::State& state) {
  const Instance& inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_instance(inst));
}

}  // namespace

BENCHMARK_CAPTURE(commutators, serial, Exec::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(commutators, parallel, Exec::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(oracle, serial, Exec::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(oracle, parallel, Exec::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
