#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finsm/error.hpp"

namespace finsm {

/// Input symbols are arbitrary non-empty strings so LaTeX tokens such as
/// "a_1" can be used as letters.
using Symbol = std::string;

/// The reserved empty-move symbol. It is never part of the inferred alphabet.
inline constexpr std::string_view kEpsilon = "\\epsilon";

inline bool is_epsilon(std::string_view s) { return s == kEpsilon; }

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Id, Id) = default;
};

using StateId = Id<struct StateTag>;
using TransitionId = Id<struct TransitionTag>;

/// Ordered set of states. Ordering by StateId makes every algorithm below
/// deterministic.
using StateSet = std::set<StateId>;

/// A non-empty set of symbols carried by one arrow. Epsilon never shares a
/// label with ordinary symbols.
class TransitionLabel {
public:
  /// Throws EmptyLabel, EmptySymbol or MixedEpsilonLabel.
  explicit TransitionLabel(std::set<Symbol> symbols);
  TransitionLabel(std::initializer_list<std::string_view> symbols);

  static TransitionLabel epsilon() { return TransitionLabel{kEpsilon}; }

  const std::set<Symbol>& symbols() const { return symbols_; }
  bool is_epsilon() const;
  bool contains(std::string_view s) const { return symbols_.find(std::string(s)) != symbols_.end(); }

  friend bool operator==(const TransitionLabel&, const TransitionLabel&) = default;

private:
  std::set<Symbol> symbols_;
};

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct State {
  StateId id;
  std::string name;
  Position pos;

  friend bool operator==(const State&, const State&) = default;
};

struct Transition {
  TransitionId id;
  StateId from;
  StateId to;
  TransitionLabel label;
  /// Perpendicular control-point offset in canvas units; 0 draws a straight arrow.
  double curve = 0.0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Unified storage for DFAs and NFAs: a DFA is just a machine that passes
/// validate_as_dfa. Values are immutable; the editing functions below return
/// modified copies.
class Machine {
public:
  Machine() = default;
  explicit Machine(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::map<StateId, State>& states() const { return states_; }
  const std::map<TransitionId, Transition>& transitions() const { return transitions_; }
  const StateSet& start() const { return start_; }
  const StateSet& final_states() const { return final_; }

  bool has_state(StateId s) const { return states_.count(s) != 0; }
  /// Throws UnknownState.
  const State& state(StateId s) const;
  /// Throws UnknownTransition.
  const Transition& transition(TransitionId t) const;
  const std::string& state_name(StateId s) const { return state(s).name; }
  std::optional<StateId> find_state(std::string_view name) const;
  bool is_start(StateId s) const { return start_.count(s) != 0; }
  bool is_final(StateId s) const { return final_.count(s) != 0; }

  /// Ids that the next add_state / add_transition will hand out. Ids are
  /// never reused within one machine value's history.
  StateId next_state_id() const { return next_state_; }
  TransitionId next_transition_id() const { return next_transition_; }

  /// Structural equality over the observable content. The id allocation
  /// cursors are not compared.
  friend bool operator==(const Machine& a, const Machine& b);

  friend std::pair<Machine, StateId> add_state(const Machine&, std::optional<std::string>, Position);
  friend Machine insert_state(const Machine&, State);
  friend std::pair<Machine, TransitionId> add_transition(const Machine&, StateId, StateId, TransitionLabel, double);
  friend Machine insert_transition(const Machine&, Transition);
  friend Machine remove_state(const Machine&, StateId);
  friend Machine remove_transition(const Machine&, TransitionId);
  friend Machine set_state_flags(const Machine&, StateId, std::optional<bool>, std::optional<bool>);
  friend Machine rename_state(const Machine&, StateId, std::string);
  friend Machine move_state(const Machine&, StateId, Position);
  friend Machine relabel_transition(const Machine&, TransitionId, TransitionLabel);
  friend Machine set_curve(const Machine&, TransitionId, double);
  friend Machine rename_machine(const Machine&, std::string);

private:
  std::string name_;
  std::map<StateId, State> states_;
  std::map<TransitionId, Transition> transitions_;
  StateSet start_;
  StateSet final_;
  StateId next_state_{0};
  TransitionId next_transition_{0};
};

inline Machine new_machine(std::string name) { return Machine(std::move(name)); }

/// Adds a state at `pos`. Without a name the state is called "q_k" for the
/// smallest k that is still free. Throws DuplicateName / InvalidName.
std::pair<Machine, StateId> add_state(const Machine& m, std::optional<std::string> name, Position pos);

/// Inserts a state with a caller-chosen id (used when loading documents).
/// Throws InvariantError on an id clash, DuplicateName / InvalidName on names.
Machine insert_state(const Machine& m, State s);

/// Parallel arrows are kept as separate transitions; nothing is merged.
/// Throws UnknownState.
std::pair<Machine, TransitionId> add_transition(const Machine& m, StateId from, StateId to,
                                                TransitionLabel label, double curve = 0.0);

/// Inserts a transition with a caller-chosen id. Throws InvariantError on an
/// id clash, UnknownState on dangling endpoints.
Machine insert_transition(const Machine& m, Transition t);

/// Drops the state together with every incident transition.
Machine remove_state(const Machine& m, StateId s);
Machine remove_transition(const Machine& m, TransitionId t);

/// std::nullopt leaves the corresponding flag unchanged.
Machine set_state_flags(const Machine& m, StateId s, std::optional<bool> is_start,
                        std::optional<bool> is_final);

Machine rename_state(const Machine& m, StateId s, std::string new_name);
Machine move_state(const Machine& m, StateId s, Position pos);
Machine relabel_transition(const Machine& m, TransitionId t, TransitionLabel label);
Machine set_curve(const Machine& m, TransitionId t, double curve);
Machine rename_machine(const Machine& m, std::string name);

}  // namespace finsm

template <class Tag>
struct std::hash<finsm::Id<Tag>> {
  std::size_t operator()(finsm::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
