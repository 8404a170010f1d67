#include "finsm/machine.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace finsm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UnknownTransition: return "UnknownTransition";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::EmptySymbol: return "EmptySymbol";
    case ErrorCode::MixedEpsilonLabel: return "MixedEpsilonLabel";
    case ErrorCode::EpsilonOnTape: return "EpsilonOnTape";
    case ErrorCode::UnknownTape: return "UnknownTape";
    case ErrorCode::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantError: return "InvariantError";
    case ErrorCode::VersionError: return "VersionError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

TransitionLabel::TransitionLabel(std::set<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorCode::EmptyLabel, "transition label has no symbols");
  if (symbols_.count(std::string{}) != 0) throw Error(ErrorCode::EmptySymbol, "empty symbol in transition label");
  if (symbols_.size() > 1 && symbols_.count(std::string(kEpsilon)) != 0)
    throw Error(ErrorCode::MixedEpsilonLabel, "epsilon cannot share a label with other symbols");
}

TransitionLabel::TransitionLabel(std::initializer_list<std::string_view> symbols)
    : TransitionLabel([&] {
        std::set<Symbol> s;
        for (auto sym : symbols) s.emplace(sym);
        return s;
      }()) {}

bool TransitionLabel::is_epsilon() const { return symbols_.size() == 1 && finsm::is_epsilon(*symbols_.begin()); }

const State& Machine::state(StateId s) const {
  auto it = states_.find(s);
  if (it == states_.end()) throw Error(ErrorCode::UnknownState, "unknown state id " + std::to_string(s.value));
  return it->second;
}

const Transition& Machine::transition(TransitionId t) const {
  auto it = transitions_.find(t);
  if (it == transitions_.end())
    throw Error(ErrorCode::UnknownTransition, "unknown transition id " + std::to_string(t.value));
  return it->second;
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
  for (const auto& [id, st] : states_)
    if (st.name == name) return id;
  return std::nullopt;
}

bool operator==(const Machine& a, const Machine& b) {
  return a.name_ == b.name_ && a.states_ == b.states_ && a.transitions_ == b.transitions_ && a.start_ == b.start_ &&
         a.final_ == b.final_;
}

namespace {

void check_name(const Machine& m, const std::string& name, std::optional<StateId> self = std::nullopt) {
  if (name.empty()) throw Error(ErrorCode::InvalidName, "state name must not be empty");
  auto existing = m.find_state(name);
  if (existing && existing != self) throw Error(ErrorCode::DuplicateName, "state name '" + name + "' already in use");
}

void require_state(const Machine& m, StateId s) {
  if (!m.has_state(s)) throw Error(ErrorCode::UnknownState, "unknown state id " + std::to_string(s.value));
}

void require_finite(Position p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorCode::InvalidArgument, "position must be finite");
}

void require_finite(double curve) {
  if (!std::isfinite(curve)) throw Error(ErrorCode::InvalidArgument, "curve must be finite");
}

std::string fresh_name(const Machine& m) {
  std::unordered_set<std::string_view> used;
  for (const auto& [id, st] : m.states()) used.insert(st.name);
  for (std::uint32_t k = 0;; ++k) {
    std::string candidate = "q_" + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

}  // namespace

std::pair<Machine, StateId> add_state(const Machine& m, std::optional<std::string> name, Position pos) {
  require_finite(pos);
  std::string n = name ? std::move(*name) : fresh_name(m);
  check_name(m, n);
  Machine out = m;
  StateId id = out.next_state_;
  out.states_.emplace(id, State{id, std::move(n), pos});
  out.next_state_ = StateId{id.value + 1};
  return {std::move(out), id};
}

Machine insert_state(const Machine& m, State s) {
  if (m.has_state(s.id))
    throw Error(ErrorCode::InvariantError, "duplicate state id " + std::to_string(s.id.value));
  require_finite(s.pos);
  check_name(m, s.name);
  Machine out = m;
  out.next_state_ = StateId{std::max(out.next_state_.value, s.id.value + 1)};
  out.states_.emplace(s.id, std::move(s));
  return out;
}

std::pair<Machine, TransitionId> add_transition(const Machine& m, StateId from, StateId to, TransitionLabel label,
                                                double curve) {
  require_state(m, from);
  require_state(m, to);
  require_finite(curve);
  Machine out = m;
  TransitionId id = out.next_transition_;
  out.transitions_.emplace(id, Transition{id, from, to, std::move(label), curve});
  out.next_transition_ = TransitionId{id.value + 1};
  return {std::move(out), id};
}

Machine insert_transition(const Machine& m, Transition t) {
  if (m.transitions_.count(t.id))
    throw Error(ErrorCode::InvariantError, "duplicate transition id " + std::to_string(t.id.value));
  require_state(m, t.from);
  require_state(m, t.to);
  require_finite(t.curve);
  Machine out = m;
  out.next_transition_ = TransitionId{std::max(out.next_transition_.value, t.id.value + 1)};
  out.transitions_.emplace(t.id, std::move(t));
  return out;
}

Machine remove_state(const Machine& m, StateId s) {
  require_state(m, s);
  Machine out = m;
  out.states_.erase(s);
  out.start_.erase(s);
  out.final_.erase(s);
  std::erase_if(out.transitions_, [s](const auto& kv) { return kv.second.from == s || kv.second.to == s; });
  return out;
}

Machine remove_transition(const Machine& m, TransitionId t) {
  m.transition(t);
  Machine out = m;
  out.transitions_.erase(t);
  return out;
}

Machine set_state_flags(const Machine& m, StateId s, std::optional<bool> is_start, std::optional<bool> is_final) {
  require_state(m, s);
  Machine out = m;
  if (is_start) {
    if (*is_start) out.start_.insert(s);
    else out.start_.erase(s);
  }
  if (is_final) {
    if (*is_final) out.final_.insert(s);
    else out.final_.erase(s);
  }
  return out;
}

Machine rename_state(const Machine& m, StateId s, std::string new_name) {
  require_state(m, s);
  check_name(m, new_name, s);
  Machine out = m;
  out.states_.at(s).name = std::move(new_name);
  return out;
}

Machine move_state(const Machine& m, StateId s, Position pos) {
  require_state(m, s);
  require_finite(pos);
  Machine out = m;
  out.states_.at(s).pos = pos;
  return out;
}

Machine relabel_transition(const Machine& m, TransitionId t, TransitionLabel label) {
  m.transition(t);
  Machine out = m;
  out.transitions_.at(t).label = std::move(label);
  return out;
}

Machine set_curve(const Machine& m, TransitionId t, double curve) {
  m.transition(t);
  require_finite(curve);
  Machine out = m;
  out.transitions_.at(t).curve = curve;
  return out;
}

Machine rename_machine(const Machine& m, std::string name) {
  Machine out = m;
  out.name_ = std::move(name);
  return out;
}

}  // namespace finsm
