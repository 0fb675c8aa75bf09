// Serial reference against the OpenMP path for the exhaustive kernels.
// Pass Exec as the benchmark argument: 0 serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <random>

#include "fusionforge/fpmatrix.hpp"
#include "fusionforge/fusion_io.hpp"
#include "fusionforge/gog.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/models.hpp"
#include "fusionforge/permgroup.hpp"

using namespace ff;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

const PermGroup& s9() {
  static const PermGroup g = load_group_file(std::string(FF_CORPUS_DIR) + "/s9.grp").group();
  return g;
}

void BM_normalizer_s9(benchmark::State& st) {
  auto s = sylow_p_subgroup(s9(), 3);
  for (auto _ : st) benchmark::DoNotOptimize(normalizer(s9(), s, exec_of(st)).order());
}

void BM_transporter_s9(benchmark::State& st) {
  auto s = sylow_p_subgroup(s9(), 3);
  auto q = conjugate(s, s9().element(12345));
  for (auto _ : st) benchmark::DoNotOptimize(transporter_set(s9(), s, q, exec_of(st)).size());
}

void BM_echelon(benchmark::State& st) {
  const std::size_t n = 400;
  std::mt19937_64 rng(1);
  std::vector<FpVector> rows(n, FpVector(n));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<std::uint32_t>(rng() % 3);
  for (auto _ : st) {
    FpEchelon e(3, n, exec_of(st));
    for (const auto& r : rows) e.add_row(r);
    benchmark::DoNotOptimize(e.rank());
  }
}

void BM_bounded_verify(benchmark::State& st) {
  auto f = load_fusion_file(std::string(FF_CORPUS_DIR) + "/s3_p3.fus").build();
  auto s3 = robinson_model(alperin_datum_from_group(f));
  auto m = amalgam_over_sylow(s3, s3, 3);
  for (auto _ : st) benchmark::DoNotOptimize(bounded_fusion_verify(m, f, 4, exec_of(st)).elements_checked);
}

}  // namespace

BENCHMARK(BM_normalizer_s9)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transporter_s9)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_echelon)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bounded_verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
