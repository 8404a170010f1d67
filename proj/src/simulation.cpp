#include "finsm/simulation.hpp"

#include <algorithm>

namespace finsm {

std::map<char, Symbol> key_mapping(const std::set<Symbol>& alphabet) {
  if (alphabet.size() > kKeySequence.size())
    throw Error(ErrorCode::AlphabetTooLarge,
                "alphabet has " + std::to_string(alphabet.size()) + " symbols; at most 26 can be mapped to keys");
  std::map<char, Symbol> keys;
  std::size_t i = 0;
  for (const auto& s : alphabet) keys.emplace(kKeySequence[i++], s);
  return keys;
}

namespace {

void check_tape(const Word& symbols) {
  if (std::any_of(symbols.begin(), symbols.end(), [](const Symbol& s) { return is_epsilon(s); }))
    throw Error(ErrorCode::EpsilonOnTape, "tape contains the epsilon symbol");
}

// Oversized alphabets still simulate; they just get no keyboard shortcuts.
std::map<char, Symbol> keys_for(const Machine& m) {
  auto sigma = infer_alphabet(m);
  if (sigma.size() > kKeySequence.size()) return {};
  return key_mapping(sigma);
}

}  // namespace

SimulationSession::SimulationSession(Machine m, MachineKind kind)
    : machine_(std::move(m)), kind_(kind), keys_(keys_for(machine_)) {}

std::variant<SimulationSession, ValidationError> SimulationSession::start(Machine m, MachineKind kind) {
  if (kind == MachineKind::DFA) {
    auto v = validate_as_dfa(m);
    if (!v.ok()) return *v.error;
  }
  return SimulationSession(std::move(m), kind);
}

const Tape& SimulationSession::tape(TapeId id) const {
  auto it = tapes_.find(id);
  if (it == tapes_.end()) throw Error(ErrorCode::UnknownTape, "unknown tape " + std::to_string(id));
  return it->second;
}

Tape& SimulationSession::mutable_tape(TapeId id) {
  auto it = tapes_.find(id);
  if (it == tapes_.end()) throw Error(ErrorCode::UnknownTape, "unknown tape " + std::to_string(id));
  return it->second;
}

void SimulationSession::retrace(TapeId id) { traces_[id] = run_tape(machine_, tapes_.at(id).symbols); }

TapeId SimulationSession::add_tape(Word symbols) {
  check_tape(symbols);
  TapeId id = next_tape_++;
  tapes_.emplace(id, Tape{id, std::move(symbols), 0});
  retrace(id);
  return id;
}

void SimulationSession::edit_tape(TapeId id, Word symbols) {
  Tape& t = mutable_tape(id);
  check_tape(symbols);
  t.symbols = std::move(symbols);
  t.ticker = 0;
  retrace(id);
}

void SimulationSession::delete_tape(TapeId id) {
  tape(id);
  tapes_.erase(id);
  traces_.erase(id);
  if (active_ == id) active_.reset();
}

void SimulationSession::select_tape(TapeId id) {
  tape(id);
  active_ = id;
}

bool SimulationSession::type_key(TapeId id, char key) {
  Tape& t = mutable_tape(id);
  auto it = keys_.find(key);
  if (it == keys_.end()) return false;
  Word next = t.symbols;
  next.push_back(it->second);
  edit_tape(id, std::move(next));
  return true;
}

void SimulationSession::delete_last_symbol(TapeId id) {
  Word next = tape(id).symbols;
  if (next.empty()) return;
  next.pop_back();
  edit_tape(id, std::move(next));
}

void SimulationSession::advance_ticker(TapeId id) {
  Tape& t = mutable_tape(id);
  if (t.ticker < t.symbols.size()) ++t.ticker;
}

void SimulationSession::rewind_ticker(TapeId id) {
  Tape& t = mutable_tape(id);
  if (t.ticker > 0) --t.ticker;
}

void SimulationSession::set_ticker(TapeId id, std::size_t pos) {
  Tape& t = mutable_tape(id);
  t.ticker = std::min(pos, t.symbols.size());
}

const std::vector<StateSet>& SimulationSession::trace(TapeId id) const {
  tape(id);
  return traces_.at(id).trace;
}

const StateSet& SimulationSession::active_states(TapeId id) const { return trace(id)[tape(id).ticker]; }

TapeStatus SimulationSession::tape_status(TapeId id) const {
  tape(id);
  return traces_.at(id).accepted ? TapeStatus::Accepted : TapeStatus::Rejected;
}

std::optional<ValidationError> SimulationSession::replace_machine(Machine m) {
  if (kind_ == MachineKind::DFA) {
    auto v = validate_as_dfa(m);
    if (!v.ok()) return v.error;
  }
  machine_ = std::move(m);
  keys_ = keys_for(machine_);
  for (const auto& [id, t] : tapes_) retrace(id);
  return std::nullopt;
}

}  // namespace finsm
