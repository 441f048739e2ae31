#include <benchmark/benchmark.h>

#include "frobscan/counting.hpp"
#include "frobscan/family.hpp"
#include "frobscan/ff.hpp"
#include "frobscan/fixtures.hpp"
#include "frobscan/primes.hpp"

using namespace frobscan;

namespace {

ExecPolicy single_thread() {
  ExecPolicy p;
  p.threads = 1;
  return p;
}

void BM_SquareTable(benchmark::State& state) {
  const uint64_t p = 13711;
  for (auto _ : state) {
    SquareTable t(p);
    benchmark::DoNotOptimize(t.chi(p / 2));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p));
}
BENCHMARK(BM_SquareTable);

void BM_LegendreScalar(benchmark::State& state) {
  const uint64_t p = 13711;
  uint64_t a = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(legendre(static_cast<int64_t>(a), p));
    a = a % (p - 1) + 1;
  }
}
BENCHMARK(BM_LegendreScalar);

void BM_HyperellipticSparse(benchmark::State& state) {
  // the q = 457 scan kernel: sparse evaluation plus table lookups
  UniPoly h = parse_unipoly("x^457 + 1");
  const uint64_t p = static_cast<uint64_t>(state.range(0));
  ExecPolicy policy = single_thread();
  for (auto _ : state) benchmark::DoNotOptimize(count_hyperelliptic(h, p, policy).n_affine);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p));
}
BENCHMARK(BM_HyperellipticSparse)->Arg(1009)->Arg(13711);

void BM_HyperellipticDense(benchmark::State& state) {
  UniPoly h = parse_unipoly("x^5 + 5*x^3 + 5*x");
  const uint64_t p = static_cast<uint64_t>(state.range(0));
  ExecPolicy policy = single_thread();
  for (auto _ : state) benchmark::DoNotOptimize(count_hyperelliptic(h, p, policy).n_affine);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p));
}
BENCHMARK(BM_HyperellipticDense)->Arg(1009)->Arg(100003);

void BM_CharsumThreefold(benchmark::State& state) {
  CountContext ctx(x1_threefold());
  ExecPolicy policy = single_thread();
  for (auto _ : state)
    benchmark::DoNotOptimize(ctx.count(7, CountMethod::CharSum, policy));
}
BENCHMARK(BM_CharsumThreefold);

void BM_BruteforceThreefold(benchmark::State& state) {
  CountContext ctx(x1_threefold());
  ExecPolicy policy = single_thread();
  for (auto _ : state)
    benchmark::DoNotOptimize(ctx.count(7, CountMethod::BruteForce, policy));
}
BENCHMARK(BM_BruteforceThreefold);

void BM_ComputeDp(benchmark::State& state) {
  FamilySpec spec = FamilySpec::make(parse_unipoly("t^4 + 1"), {0});
  const uint64_t p = static_cast<uint64_t>(state.range(0));
  ExecPolicy policy = single_thread();
  for (auto _ : state) benchmark::DoNotOptimize(compute_dp(spec, p, policy).size);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p) *
                          static_cast<int64_t>(p));
}
BENCHMARK(BM_ComputeDp)->Arg(101)->Arg(499);

void BM_SievePrimes(benchmark::State& state) {
  ExecPolicy policy = single_thread();
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(1000000, policy).primes.size());
}
BENCHMARK(BM_SievePrimes);

}  // namespace

BENCHMARK_MAIN();
