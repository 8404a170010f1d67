#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finsm/machine.hpp"

namespace finsm {

/// A finite input word. Epsilon is never a legal letter of a word.
using Word = std::vector<Symbol>;

/// Splits a string into one-character symbols ("0101" -> {"0","1","0","1"}).
Word split_chars(std::string_view text);

/// Union of all transition labels minus epsilon, in lexicographic order.
std::set<Symbol> infer_alphabet(const Machine& m);

/// Least superset of `states` closed under epsilon moves.
StateSet epsilon_closure(const Machine& m, const StateSet& states);

/// States reachable from `active` by reading `symbol`, then epsilon-closed.
/// A symbol outside the alphabet simply yields the empty set.
StateSet step(const Machine& m, const StateSet& active, std::string_view symbol);

struct AcceptanceResult {
  bool accepted = false;
  /// trace[0] is the closed start set; trace[i+1] is the active set after tape[i].
  std::vector<StateSet> trace;
};

/// Throws EpsilonOnTape if the tape contains the epsilon symbol.
AcceptanceResult run_tape(const Machine& m, std::span<const Symbol> tape);

enum class ValidationCode {
  NoStartState,
  MultipleStartStates,
  EpsilonTransition,
  NondeterministicTransition,
  MissingTransition,
};

std::string_view to_string(ValidationCode code);
/// "EPSILON_TRANSITION" style wire names.
std::string_view wire_name(ValidationCode code);

struct ValidationError {
  ValidationCode code;
  std::optional<StateId> state;
  std::optional<Symbol> symbol;
  std::string message;

  friend bool operator==(const ValidationError&, const ValidationError&) = default;
};

/// Transition function of a machine that passed DFA validation.
struct DfaTable {
  StateId start;
  std::map<std::pair<StateId, Symbol>, StateId> delta;
};

struct ValidationResult {
  std::optional<DfaTable> dfa;
  std::optional<ValidationError> error;

  bool ok() const { return !error.has_value(); }
};

/// Every DFA-rule violation, in reporting order: start-state problems, then
/// epsilon arrows, then nondeterminism, then missing arrows. Inside each class
/// ordered by StateId, then symbol.
std::vector<ValidationError> dfa_violations(const Machine& m);

/// Reports only the first entry of dfa_violations, or the DFA table on success.
ValidationResult validate_as_dfa(const Machine& m);

enum class MachineKind { DFA, NFA };

std::string_view to_string(MachineKind kind);
MachineKind classify(const Machine& m);

/// Reachable-subset determinization. The result is total over
/// infer_alphabet(m); an empty dead subset is added when needed.
Machine subset_construction(const Machine& m);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Word> counterexample;
};

/// Compares acceptance on every word over the joint alphabet up to
/// `max_len`, in shortlex order, returning the first disagreement.
EquivalenceResult equivalent_up_to(const Machine& a, const Machine& b, std::size_t max_len);

/// Renders the machine as its 5-tuple, using the DFA form when the machine
/// validates as one.
std::string format_definition(const Machine& m);

}  // namespace finsm
