#include <benchmark/benchmark.h>

#include "coxrep/gns.hpp"
#include "coxrep/presets.hpp"
#include "coxrep/rng.hpp"

using namespace coxrep;

namespace {

Word random_word(SplitMix64& rng, int rank, int len) {
  Word w;
  w.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i)
    w.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))));
  return w;
}

void BM_ReduceFast(benchmark::State& state) {
  // Exponential root growth caps the reliable word length here; the
  // affine benchmark below covers long inputs.
  CoxeterMatrix m = load_preset("ra3").matrix;
  SplitMix64 rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, m.rank(), state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_fast(words[i++ % words.size()], m));
  }
}
BENCHMARK(BM_ReduceFast)->Arg(8)->Arg(32);

void BM_ReduceFastAffine(benchmark::State& state) {
  CoxeterMatrix m = load_preset("iinf").matrix;
  SplitMix64 rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, m.rank(), state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_fast(words[i++ % words.size()], m));
  }
}
BENCHMARK(BM_ReduceFastAffine)->Arg(128)->Arg(512)->Arg(2048);

void BM_ReduceReference(benchmark::State& state) {
  CoxeterMatrix m = load_preset("ra3").matrix;
  SplitMix64 rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, m.rank(), state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_reference(words[i++ % words.size()], m));
  }
}
BENCHMARK(BM_ReduceReference)->Arg(8)->Arg(16);

void BM_EnumerateBall(benchmark::State& state) {
  CoxeterMatrix m = load_preset("u3").matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Ball::enumerate(m, static_cast<int>(state.range(0))));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateBall)->Arg(4)->Arg(7)->Arg(10);

void BM_BuildGram(benchmark::State& state) {
  Ball ball = Ball::enumerate(load_preset("iinf").matrix, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BallSpace::build(ball, 0.5));
  }
}
BENCHMARK(BM_BuildGram)->Arg(8)->Arg(32)->Arg(64);

void BM_RestrictedNorm(benchmark::State& state) {
  CoxeterMatrix m = load_preset("iinf").matrix;
  BallSpace dom = BallSpace::build(Ball::enumerate(m, static_cast<int>(state.range(0))), 0.5);
  BallSpace cod = BallSpace::build(Ball::enumerate(m, 2 * static_cast<int>(state.range(0))), 0.5);
  Element g = reduce({0, 1, 0}, m);
  Complex z = std::polar(0.5, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(restricted_norm(pi_z(g, z, dom, cod)));
  }
}
BENCHMARK(BM_RestrictedNorm)->Arg(3)->Arg(6)->Arg(12);

void BM_KappaSearch(benchmark::State& state) {
  CoxeterMatrix m = load_preset("iinf").matrix;
  Ball ball = Ball::enumerate(m, static_cast<int>(state.range(0)));
  ReflectionTable table =
      ReflectionTable::enumerate(Ball::enumerate(m, 2 * static_cast<int>(state.range(0)) - 1));
  Element g = reduce({0, 1, 0, 1}, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kappa_search(g, 0.5, ball, table, m));
  }
}
BENCHMARK(BM_KappaSearch)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
