#include <benchmark/benchmark.h>

#include <nlohmann/json.hpp>

#include <walkforge/colouring.hpp>
#include <walkforge/csequence.hpp>
#include <walkforge/dfunction.hpp>
#include <walkforge/ordinal.hpp>
#include <walkforge/partition.hpp>
#include <walkforge/rng.hpp>
#include <walkforge/walks.hpp>

namespace {

using namespace walkforge;

const ColouringSystem& system64() {
  static const ColouringSystem sys = ColouringSystem::from_json(nlohmann::json{
      {"schema", "walkforge/1"},
      {"kind", "colouring-system"},
      {"kappa0", 3},
      {"kappa1", 5},
      {"kappa2", 7},
      {"h", "identity"},
      {"s", "all"},
      {"F0", "mod:3"},
      {"F1", "mod:5"},
      {"F2", "mod:7"},
      {"hprime", "identity"},
      {"h1", "identity"},
      {"h2", "mod:2"}});
  return sys;
}

void BM_WalkFinite(benchmark::State& state) {
  const FiniteSuccessor cs(1024);
  const Ordinal beta = Ordinal::nat(1023);
  const Ordinal alpha = Ordinal::nat(1);
  for (auto _ : state) benchmark::DoNotOptimize(walk(cs, beta, alpha));
}
BENCHMARK(BM_WalkFinite);

void BM_WalkCanonical(benchmark::State& state) {
  const CanonicalLadder cs(parse_ordinal("w^4"));
  const Ordinal beta = parse_ordinal("w^3*7+w^2*5+w*3+9");
  const Ordinal alpha = parse_ordinal("w*2+1");
  for (auto _ : state) benchmark::DoNotOptimize(walk(cs, beta, alpha));
}
BENCHMARK(BM_WalkCanonical);

void BM_CoherenceThreshold(benchmark::State& state) {
  const CanonicalLadder cs(parse_ordinal("w^4"));
  const Ordinal beta = parse_ordinal("w^3*7+w^2*5+w*3+9");
  const Ordinal delta = parse_ordinal("w^2");
  for (auto _ : state) benchmark::DoNotOptimize(coherence_threshold(cs, beta, delta));
}
BENCHMARK(BM_CoherenceThreshold);

const LabelledSeq& sample_sequence() {
  static const LabelledSeq q({2, 0, 1, 2, 1, 0, 2, 1}, {1, 2, 0, 2, 1, 2, 0, 1});
  return q;
}

void BM_IndexDirect(benchmark::State& state) {
  const LabelledSeq& q = sample_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(d_direct(q));
}
BENCHMARK(BM_IndexDirect);

void BM_IndexByEnumeration(benchmark::State& state) {
  const LabelledSeq& q = sample_sequence();
  for (auto _ : state) benchmark::DoNotOptimize(d_by_enumeration(q));
}
BENCHMARK(BM_IndexByEnumeration);

void BM_ColourPair(benchmark::State& state) {
  const ColouringSystem& sys = system64();
  const FiniteSuccessor cs(64);
  const Ordinal a = Ordinal::nat(5);
  const Ordinal b = Ordinal::nat(60);
  for (auto _ : state) benchmark::DoNotOptimize(c1(sys, cs, a, b));
}
BENCHMARK(BM_ColourPair);

void BM_ColourTable(benchmark::State& state) {
  const ColouringSystem& sys = system64();
  const FiniteSuccessor cs(64);
  for (auto _ : state) benchmark::DoNotOptimize(c1_table(sys, cs, 64));
}
BENCHMARK(BM_ColourTable);

void BM_CheckChallenge(benchmark::State& state) {
  PartitionParams params;
  params.variant = Variant::Pr0;
  params.lambda = 24;
  params.mu = 8;
  params.sigma = 3;
  params.theta0 = params.theta1 = 3;
  SearchBounds bounds;
  bounds.rows = 4;
  bounds.i0 = bounds.i1 = 2;
  Rng rng(7);
  const ColourTable c = random_colour_table(params.lambda, params.sigma, rng);
  const PrInstance inst = random_pr_instance(params, bounds, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_pr_instance(c, params, inst));
}
BENCHMARK(BM_CheckChallenge);

}  // namespace

BENCHMARK_MAIN();
