#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "finsm/algorithms.hpp"

namespace finsm {

using TapeId = std::uint32_t;

struct Tape {
  TapeId id = 0;
  Word symbols;
  /// Read position in [0, symbols.size()].
  std::size_t ticker = 0;
};

enum class TapeStatus { Accepted, Rejected };

/// Default home-row-first key order used to type alphabet symbols.
inline constexpr std::string_view kKeySequence = "asdfghjklqwertyuiopzxcvbnm";

/// Maps the i-th symbol (lexicographic) to the i-th key of kKeySequence.
/// Throws AlphabetTooLarge past 26 symbols.
std::map<char, Symbol> key_mapping(const std::set<Symbol>& alphabet);

/// A machine under test plus its tapes. Each tape's full trace is kept
/// up to date on every mutation, so scrubbing is just indexing into it.
///
/// Sessions are single-writer; callers serialize mutations.
class SimulationSession {
public:
  /// Returns the first DFA violation instead of a session when `kind` is DFA
  /// and the machine does not validate.
  static std::variant<SimulationSession, ValidationError> start(Machine m, MachineKind kind);

  const Machine& machine() const { return machine_; }
  MachineKind kind() const { return kind_; }
  const std::map<TapeId, Tape>& tapes() const { return tapes_; }
  const Tape& tape(TapeId id) const;
  std::optional<TapeId> active_tape() const { return active_; }

  /// Throws EpsilonOnTape.
  TapeId add_tape(Word symbols);
  /// Replaces the content and resets the ticker. Throws UnknownTape / EpsilonOnTape.
  void edit_tape(TapeId id, Word symbols);
  void delete_tape(TapeId id);
  void select_tape(TapeId id);

  /// Appends the symbol bound to `key`; false if the key is unmapped.
  bool type_key(TapeId id, char key);
  /// Drops the rightmost symbol (no-op on an empty tape).
  void delete_last_symbol(TapeId id);

  /// Ticker moves clamp at the tape ends.
  void advance_ticker(TapeId id);
  void rewind_ticker(TapeId id);
  void set_ticker(TapeId id, std::size_t pos);

  const std::vector<StateSet>& trace(TapeId id) const;
  const StateSet& active_states(TapeId id) const;
  TapeStatus tape_status(TapeId id) const;

  /// Swaps in an edited machine and recomputes every trace. For DFA sessions
  /// the new machine is revalidated; on failure the session is unchanged and
  /// the error is returned.
  std::optional<ValidationError> replace_machine(Machine m);

  const std::map<char, Symbol>& keys() const { return keys_; }

private:
  SimulationSession(Machine m, MachineKind kind);

  Tape& mutable_tape(TapeId id);
  void retrace(TapeId id);

  Machine machine_;
  MachineKind kind_;
  std::map<TapeId, Tape> tapes_;
  std::map<TapeId, AcceptanceResult> traces_;
  std::optional<TapeId> active_;
  std::map<char, Symbol> keys_;
  TapeId next_tape_ = 0;
};

}  // namespace finsm
