// Parallel kernels against their serial twins.

#include <random>

#include <benchmark/benchmark.h>

#include "finsm/algorithms.hpp"
#include "finsm/kernels.hpp"

using namespace finsm;

namespace {

// A ring of `n` states over {a,b} with random b-edges. Identical seeds give
// equivalent machines, so the disagreement search runs to the full length.
Machine ring(std::size_t n, std::uint64_t seed, bool shifted) {
  std::mt19937_64 rng(seed);
  Machine m = new_machine("ring");
  std::vector<StateId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto [next, id] = add_state(m, std::nullopt, {double(i), 0});
    m = next;
    ids.push_back(id);
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    m = add_transition(m, ids[i], ids[(i + 1) % n], TransitionLabel{"a"}).first;
    m = add_transition(m, ids[i], ids[pick(rng)], TransitionLabel{"b"}).first;
  }
  m = set_state_flags(m, ids[0], true, std::nullopt);
  m = set_state_flags(m, ids[shifted ? n - 1 : n / 2], std::nullopt, true);
  return m;
}

std::vector<std::vector<Letter>> random_words(std::size_t count, std::size_t len) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Letter> letter(0, 1);
  std::vector<std::vector<Letter>> out(count, std::vector<Letter>(len));
  for (auto& w : out)
    for (auto& l : w) l = letter(rng);
  return out;
}

const std::vector<Symbol> kAb{"a", "b"};

template <auto Kernel>
void BM_Batch(benchmark::State& st) {
  CompiledMachine cm(ring(static_cast<std::size_t>(st.range(0)), 1, false), kAb);
  auto words = random_words(4096, 64);
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(cm, words));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(words.size()));
}

template <auto Kernel>
void BM_Disagreement(benchmark::State& st) {
  CompiledMachine a(ring(32, 2, false), kAb);
  CompiledMachine b(ring(32, 2, false), kAb);
  const auto len = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(a, b, len));
  st.SetItemsProcessed(st.iterations() * ((std::int64_t{2} << len) - 1));
}

}  // namespace

BENCHMARK(BM_Batch<accepts_batch_serial>)->Arg(16)->Arg(200);
BENCHMARK(BM_Batch<accepts_batch>)->Arg(16)->Arg(200);
BENCHMARK(BM_Disagreement<first_disagreement_serial>)->Arg(12)->Arg(16);
BENCHMARK(BM_Disagreement<first_disagreement>)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
