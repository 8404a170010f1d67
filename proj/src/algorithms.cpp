#include "finsm/algorithms.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "finsm/kernels.hpp"

namespace finsm {

Word split_chars(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.emplace_back(1, c);
  return w;
}

std::set<Symbol> infer_alphabet(const Machine& m) {
  std::set<Symbol> sigma;
  for (const auto& [id, t] : m.transitions())
    for (const auto& s : t.label.symbols())
      if (!is_epsilon(s)) sigma.insert(s);
  return sigma;
}

StateSet epsilon_closure(const Machine& m, const StateSet& states) {
  StateSet closed = states;
  std::deque<StateId> work(states.begin(), states.end());
  while (!work.empty()) {
    StateId q = work.front();
    work.pop_front();
    for (const auto& [id, t] : m.transitions()) {
      if (t.from != q || !t.label.is_epsilon()) continue;
      if (closed.insert(t.to).second) work.push_back(t.to);
    }
  }
  return closed;
}

StateSet step(const Machine& m, const StateSet& active, std::string_view symbol) {
  StateSet next;
  for (const auto& [id, t] : m.transitions())
    if (active.count(t.from) && t.label.contains(symbol)) next.insert(t.to);
  return epsilon_closure(m, next);
}

AcceptanceResult run_tape(const Machine& m, std::span<const Symbol> tape) {
  for (const auto& s : tape)
    if (is_epsilon(s)) throw Error(ErrorCode::EpsilonOnTape, "tape contains the epsilon symbol");

  AcceptanceResult result;
  result.trace.reserve(tape.size() + 1);
  result.trace.push_back(epsilon_closure(m, m.start()));
  for (const auto& s : tape) result.trace.push_back(step(m, result.trace.back(), s));

  const auto& last = result.trace.back();
  result.accepted = std::any_of(last.begin(), last.end(), [&](StateId q) { return m.is_final(q); });
  return result;
}

std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::NoStartState: return "NoStartState";
    case ValidationCode::MultipleStartStates: return "MultipleStartStates";
    case ValidationCode::EpsilonTransition: return "EpsilonTransition";
    case ValidationCode::NondeterministicTransition: return "NondeterministicTransition";
    case ValidationCode::MissingTransition: return "MissingTransition";
  }
  return "Unknown";
}

std::string_view wire_name(ValidationCode code) {
  switch (code) {
    case ValidationCode::NoStartState: return "NO_START_STATE";
    case ValidationCode::MultipleStartStates: return "MULTIPLE_START_STATES";
    case ValidationCode::EpsilonTransition: return "EPSILON_TRANSITION";
    case ValidationCode::NondeterministicTransition: return "NONDETERMINISTIC_TRANSITION";
    case ValidationCode::MissingTransition: return "MISSING_TRANSITION";
  }
  return "UNKNOWN";
}

std::vector<ValidationError> dfa_violations(const Machine& m) {
  std::vector<ValidationError> out;

  if (m.start().empty()) {
    out.push_back({ValidationCode::NoStartState, std::nullopt, std::nullopt, "no start state"});
  } else if (m.start().size() > 1) {
    std::string names;
    for (StateId q : m.start()) names += (names.empty() ? "" : ", ") + m.state_name(q);
    out.push_back({ValidationCode::MultipleStartStates, std::nullopt, std::nullopt,
                   "multiple start states: " + names});
  }

  // Outgoing arrows per (state, symbol); epsilon arrows are tracked per state.
  std::map<StateId, std::map<Symbol, int>> counts;
  std::set<StateId> has_epsilon;
  for (const auto& [id, t] : m.transitions()) {
    if (t.label.is_epsilon()) {
      has_epsilon.insert(t.from);
      continue;
    }
    for (const auto& s : t.label.symbols()) ++counts[t.from][s];
  }

  for (StateId q : has_epsilon)
    out.push_back({ValidationCode::EpsilonTransition, q, std::nullopt,
                   "epsilon transition at state " + m.state_name(q)});

  for (const auto& [q, per_symbol] : counts)
    for (const auto& [s, n] : per_symbol)
      if (n > 1)
        out.push_back({ValidationCode::NondeterministicTransition, q, s,
                       "state " + m.state_name(q) + " has " + std::to_string(n) + " transitions on " + s});

  const auto sigma = infer_alphabet(m);
  for (const auto& [q, st] : m.states()) {
    auto it = counts.find(q);
    for (const auto& s : sigma)
      if (it == counts.end() || !it->second.count(s))
        out.push_back({ValidationCode::MissingTransition, q, s,
                       "state " + st.name + " has no transition for " + s});
  }
  return out;
}

ValidationResult validate_as_dfa(const Machine& m) {
  auto violations = dfa_violations(m);
  if (!violations.empty()) return {std::nullopt, std::move(violations.front())};

  DfaTable table{*m.start().begin(), {}};
  for (const auto& [id, t] : m.transitions())
    for (const auto& s : t.label.symbols()) table.delta.emplace(std::pair{t.from, s}, t.to);
  return {std::move(table), std::nullopt};
}

std::string_view to_string(MachineKind kind) { return kind == MachineKind::DFA ? "DFA" : "NFA"; }

MachineKind classify(const Machine& m) { return validate_as_dfa(m).ok() ? MachineKind::DFA : MachineKind::NFA; }

namespace {

std::string subset_name(const Machine& m, const StateSet& subset) {
  std::string name = "{";
  bool first = true;
  for (StateId q : subset) {
    if (!first) name += ",";
    name += m.state_name(q);
    first = false;
  }
  return name + "}";
}

}  // namespace

Machine subset_construction(const Machine& m) {
  const auto sigma = infer_alphabet(m);

  std::vector<StateSet> subsets;
  std::map<StateSet, std::size_t> index;
  // (from subset, to subset) -> symbols, so arrows sharing endpoints get one label.
  std::map<std::pair<std::size_t, std::size_t>, std::set<Symbol>> arrows;

  auto intern = [&](StateSet s) {
    auto [it, inserted] = index.emplace(s, subsets.size());
    if (inserted) subsets.push_back(std::move(s));
    return it->second;
  };

  intern(epsilon_closure(m, m.start()));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (const auto& a : sigma) {
      std::size_t j = intern(step(m, subsets[i], a));
      arrows[{i, j}].insert(a);
    }
  }

  Machine dfa(m.name().empty() ? std::string{} : m.name() + " (determinized)");
  std::vector<StateId> ids;
  ids.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    // Simple row layout, three canvas units apart.
    auto [next, id] = add_state(dfa, subset_name(m, subsets[i]), Position{3.0 * static_cast<double>(i), 0.0});
    bool accepting = std::any_of(subsets[i].begin(), subsets[i].end(), [&](StateId q) { return m.is_final(q); });
    dfa = set_state_flags(next, id, i == 0, accepting);
    ids.push_back(id);
  }
  for (const auto& [ends, symbols] : arrows) {
    double curve = ends.first == ends.second ? 0.0 : (ends.first < ends.second ? 0.5 : -0.5);
    dfa = add_transition(dfa, ids[ends.first], ids[ends.second], TransitionLabel(symbols), curve).first;
  }
  return dfa;
}

EquivalenceResult equivalent_up_to(const Machine& a, const Machine& b, std::size_t max_len) {
  std::set<Symbol> joint = infer_alphabet(a);
  joint.merge(infer_alphabet(b));
  std::vector<Symbol> alphabet(joint.begin(), joint.end());

  const CompiledMachine ca(a, alphabet);
  const CompiledMachine cb(b, alphabet);
  auto hit = first_disagreement(ca, cb, max_len);
  if (!hit) return {true, std::nullopt};

  Word w;
  for (auto letter : *hit) w.push_back(alphabet[letter]);
  return {false, std::move(w)};
}

namespace {

std::string set_text(const Machine& m, const StateSet& states, bool by_name) {
  std::vector<std::string> names;
  for (StateId q : states) names.push_back(m.state_name(q));
  if (by_name) std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

std::string symbol_text(const Symbol& s) { return is_epsilon(s) ? "ε" : s; }

}  // namespace

std::string format_definition(const Machine& m) {
  const auto validation = validate_as_dfa(m);
  const bool dfa = validation.ok();

  StateSet all;
  for (const auto& [id, st] : m.states()) all.insert(id);

  std::ostringstream out;
  out << (dfa ? "M = (Q, Σ, δ, s, F)\n" : "M = (Q, Σ, Δ, S, F)\n");
  out << "Q = " << set_text(m, all, true) << "\n";

  std::string sigma = "{";
  bool first = true;
  for (const auto& s : infer_alphabet(m)) {
    sigma += (first ? "" : ", ") + s;
    first = false;
  }
  out << "Σ = " << sigma << "}\n";

  // Group arrows by (source, symbol); epsilon sorts by its own text.
  std::map<StateId, std::map<Symbol, StateSet>> rows;
  for (const auto& [id, t] : m.transitions())
    for (const auto& s : t.label.symbols()) rows[t.from][s].insert(t.to);

  for (const auto& [q, per_symbol] : rows) {
    for (const auto& [s, targets] : per_symbol) {
      if (dfa)
        out << "δ(" << m.state_name(q) << ", " << symbol_text(s) << ") = " << m.state_name(*targets.begin()) << "\n";
      else
        out << "Δ(" << m.state_name(q) << ", " << symbol_text(s) << ") = " << set_text(m, targets, false) << "\n";
    }
  }

  if (dfa) out << "s = " << m.state_name(validation.dfa->start) << "\n";
  else out << "S = " << set_text(m, m.start(), true) << "\n";
  out << "F = " << set_text(m, m.final_states(), true) << "\n";
  return out.str();
}

}  // namespace finsm
