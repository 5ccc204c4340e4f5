#include "tgc/bch.hpp"
#include "tgc/characters.hpp"
#include "tgc/ncpoly.hpp"
#include "tgc/subgroups.hpp"
#include "tgc/truncated.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tgc;

void BM_ncpoly_mul(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  auto syms = std::make_shared<SymbolTable>();
  for (int k = 1; k <= 3; ++k) syms->add(k, "g" + std::to_string(k), 1);
  NCPoly a = NCPoly::one(r, syms);
  for (int k = 1; k <= 3; ++k) a = a * exp(NCPoly::generator(r, syms, k));
  for (auto _ : state) benchmark::DoNotOptimize(a * a);
}
BENCHMARK(BM_ncpoly_mul)->Arg(4)->Arg(5)->Arg(6);

void BM_factored_log(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  auto syms = std::make_shared<SymbolTable>();
  for (int k = 1; k <= 3; ++k) syms->add(k, "g" + std::to_string(k), 1);
  NCPoly g = NCPoly::one(r, syms);
  for (int k = 1; k <= 3; ++k) g = g * exp(NCPoly::generator(r, syms, k));
  for (auto _ : state) benchmark::DoNotOptimize(factored_log(g));
}
BENCHMARK(BM_factored_log)->Arg(4)->Arg(5)->Arg(6);

void BM_verify_lemma_4_1(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma_4_1(r, 1));
}
BENCHMARK(BM_verify_lemma_4_1)->Arg(4)->Arg(5);

void BM_mat_mul(benchmark::State& state) {
  const GroupContext ctx = make_group_context(2, 5, 4);
  FpMatrix x = FpMatrix::zero(2);
  x.set(0, 1, 1);
  x.set(1, 0, 2);
  const TruncatedMatrix a = exp_matrix(ctx, 1, x);
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, a));
}
BENCHMARK(BM_mat_mul);

void BM_factor_coordinates(benchmark::State& state) {
  const GroupContext ctx = make_group_context(2, 5, 4);
  FpMatrix x = FpMatrix::zero(2);
  x.set(0, 0, 1);
  x.set(0, 1, 3);
  x.set(1, 1, 2);
  const TruncatedMatrix g = mat_mul(exp_matrix(ctx, 1, x), exp_matrix(ctx, 2, x));
  for (auto _ : state) benchmark::DoNotOptimize(factor_coordinates(ctx, g));
}
BENCHMARK(BM_factor_coordinates);

void BM_enumerate_Gr(benchmark::State& state) {
  const GroupContext ctx = make_group_context(2, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate(ctx, SubgroupSpec{SubgroupTag::Gr, 0}));
}
BENCHMARK(BM_enumerate_Gr);

void BM_induce_borel(benchmark::State& state) {
  const GroupContext ctx = make_group_context(2, 2, 2);
  const CharacterSpec spec = make_character_spec(ctx, {0, 0}, {{0, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(induce(spec, InductionSubgroup::Br));
}
BENCHMARK(BM_induce_borel);

}  // namespace

BENCHMARK_MAIN();
