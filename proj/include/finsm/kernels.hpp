#pragma once

// Bit-parallel simulation kernels used for bulk work (bounded equivalence,
// batch tape classification). Each OpenMP kernel has a *_serial twin that
// the tests use as a reference.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "finsm/machine.hpp"

namespace finsm {

using Letter = std::uint32_t;

/// Dense snapshot of a machine over a fixed, caller-supplied alphabet.
/// Successor sets are stored already epsilon-closed, so one step is an OR
/// over the active states.
class CompiledMachine {
public:
  CompiledMachine(const Machine& m, std::span<const Symbol> alphabet);

  std::size_t state_count() const { return states_; }
  std::size_t alphabet_size() const { return letters_; }

  bool accepts(std::span<const Letter> word) const;

private:
  using Word64 = std::uint64_t;

  std::span<const Word64> successors(std::size_t state, Letter a) const {
    return {succ_.data() + (state * letters_ + a) * words_, words_};
  }

  std::size_t states_ = 0;
  std::size_t letters_ = 0;
  std::size_t words_ = 0;
  std::vector<Word64> start_;
  std::vector<Word64> final_;
  std::vector<Word64> succ_;
};

std::vector<std::uint8_t> accepts_batch(const CompiledMachine& m, std::span<const std::vector<Letter>> words);
std::vector<std::uint8_t> accepts_batch_serial(const CompiledMachine& m, std::span<const std::vector<Letter>> words);

/// Shortlex-first word of length <= max_len on which the two machines
/// disagree. Both machines must be compiled over the same alphabet.
/// Throws InvalidArgument if the search space exceeds 2^40 words.
std::optional<std::vector<Letter>> first_disagreement(const CompiledMachine& a, const CompiledMachine& b,
                                                      std::size_t max_len);
std::optional<std::vector<Letter>> first_disagreement_serial(const CompiledMachine& a, const CompiledMachine& b,
                                                             std::size_t max_len);

/// Number of threads the parallel kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace finsm
