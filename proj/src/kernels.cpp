#include "finsm/kernels.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "finsm/algorithms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace finsm {

CompiledMachine::CompiledMachine(const Machine& m, std::span<const Symbol> alphabet)
    : states_(m.states().size()), letters_(alphabet.size()), words_((m.states().size() + 63) / 64) {
  std::map<StateId, std::size_t> dense;
  std::vector<StateId> ids;
  for (const auto& [id, st] : m.states()) {
    dense.emplace(id, ids.size());
    ids.push_back(id);
  }

  auto to_bits = [&](const StateSet& set, Word64* out) {
    for (StateId q : set) {
      std::size_t i = dense.at(q);
      out[i / 64] |= Word64{1} << (i % 64);
    }
  };

  start_.assign(words_, 0);
  final_.assign(words_, 0);
  to_bits(epsilon_closure(m, m.start()), start_.data());
  to_bits(m.final_states(), final_.data());

  succ_.assign(states_ * letters_ * words_, 0);
  for (std::size_t i = 0; i < states_; ++i)
    for (Letter a = 0; a < letters_; ++a)
      to_bits(step(m, StateSet{ids[i]}, alphabet[a]), succ_.data() + (i * letters_ + a) * words_);
}

bool CompiledMachine::accepts(std::span<const Letter> word) const {
  std::vector<Word64> cur = start_;
  std::vector<Word64> next(words_);
  for (Letter a : word) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t w = 0; w < words_; ++w) {
      Word64 bits = cur[w];
      while (bits) {
        std::size_t i = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        auto succ = successors(i, a);
        for (std::size_t k = 0; k < words_; ++k) next[k] |= succ[k];
      }
    }
    cur.swap(next);
  }
  for (std::size_t w = 0; w < words_; ++w)
    if (cur[w] & final_[w]) return true;
  return false;
}

std::vector<std::uint8_t> accepts_batch(const CompiledMachine& m, std::span<const std::vector<Letter>> words) {
  std::vector<std::uint8_t> out(words.size());
  const auto n = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) out[i] = m.accepts(words[i]);
  return out;
}

std::vector<std::uint8_t> accepts_batch_serial(const CompiledMachine& m, std::span<const std::vector<Letter>> words) {
  std::vector<std::uint8_t> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = m.accepts(words[i]);
  return out;
}

namespace {

constexpr std::uint64_t kMaxSearch = std::uint64_t{1} << 40;

// Number of words of each length 0..max_len; throws once the total passes kMaxSearch.
std::vector<std::uint64_t> level_sizes(std::size_t k, std::size_t max_len) {
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    total += level;
    if (total > kMaxSearch) throw Error(ErrorCode::InvalidArgument, "bounded equivalence search space too large");
    sizes.push_back(level);
    if (k == 0) break;
    if (level > kMaxSearch / k + 1) level = kMaxSearch + 1;
    else level *= k;
  }
  return sizes;
}

// The index-th word of the given length in lexicographic order.
void decode(std::uint64_t index, std::size_t k, std::vector<Letter>& word) {
  for (std::size_t i = word.size(); i-- > 0;) {
    word[i] = static_cast<Letter>(index % k);
    index /= k;
  }
}

void check_compatible(const CompiledMachine& a, const CompiledMachine& b) {
  if (a.alphabet_size() != b.alphabet_size())
    throw Error(ErrorCode::InvalidArgument, "machines compiled over different alphabets");
}

}  // namespace

std::optional<std::vector<Letter>> first_disagreement(const CompiledMachine& a, const CompiledMachine& b,
                                                      std::size_t max_len) {
  check_compatible(a, b);
  const std::size_t k = a.alphabet_size();
  const auto sizes = level_sizes(k, max_len);

  for (std::size_t len = 0; len < sizes.size(); ++len) {
    const auto count = static_cast<std::int64_t>(sizes[len]);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel
    {
      std::vector<Letter> word(len);
#pragma omp for schedule(static) reduction(min : best)
      for (std::int64_t i = 0; i < count; ++i) {
        if (i >= best) continue;
        decode(static_cast<std::uint64_t>(i), k, word);
        if (a.accepts(word) != b.accepts(word)) best = std::min(best, i);
      }
    }
    if (best != std::numeric_limits<std::int64_t>::max()) {
      std::vector<Letter> word(len);
      decode(static_cast<std::uint64_t>(best), k, word);
      return word;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Letter>> first_disagreement_serial(const CompiledMachine& a, const CompiledMachine& b,
                                                             std::size_t max_len) {
  check_compatible(a, b);
  const std::size_t k = a.alphabet_size();
  const auto sizes = level_sizes(k, max_len);
  for (std::size_t len = 0; len < sizes.size(); ++len) {
    std::vector<Letter> word(len);
    for (std::uint64_t i = 0; i < sizes[len]; ++i) {
      decode(i, k, word);
      if (a.accepts(word) != b.accepts(word)) return word;
    }
  }
  return std::nullopt;
}

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace finsm
