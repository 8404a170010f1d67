#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing in
// here calls the engine's closure/step/run code, so the oracles can be used to
// check it.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "finsm/machine.hpp"

namespace finsm::testing {

// The running NFA example: 0-or-more {0,1} followed by "01", or the empty word.
//   q_0' -eps-> q_1', q_0' -eps-> q_3', q_1' -0-> q_2', q_1' -{0,1}-> q_1', q_2' -1-> q_3'
inline Machine paper_nfa() {
  Machine m = new_machine("paper-nfa");
  StateId q0, q1, q2, q3;
  std::tie(m, q0) = add_state(m, "q_0'", {0, 2});
  std::tie(m, q1) = add_state(m, "q_1'", {2, 0});
  std::tie(m, q2) = add_state(m, "q_2'", {4, 0});
  std::tie(m, q3) = add_state(m, "q_3'", {4, 2});
  m = add_transition(m, q0, q1, TransitionLabel::epsilon()).first;
  m = add_transition(m, q0, q3, TransitionLabel::epsilon()).first;
  m = add_transition(m, q1, q2, TransitionLabel{"0"}).first;
  m = add_transition(m, q1, q1, TransitionLabel{"0", "1"}).first;
  m = add_transition(m, q2, q3, TransitionLabel{"1"}).first;
  m = set_state_flags(m, q0, true, std::nullopt);
  m = set_state_flags(m, q3, std::nullopt, true);
  return m;
}

// The DFA example exactly as published, with no arrow for q_0 on 1.
inline Machine paper_dfa_literal() {
  Machine m = new_machine("paper-dfa-literal");
  StateId q0, q1, q2;
  std::tie(m, q0) = add_state(m, "q_0", {0, 0});
  std::tie(m, q1) = add_state(m, "q_1", {3, 0});
  std::tie(m, q2) = add_state(m, "q_2", {1.5, 2});
  m = add_transition(m, q0, q1, TransitionLabel{"0"}, 0.5).first;
  m = add_transition(m, q1, q1, TransitionLabel{"0"}).first;
  m = add_transition(m, q2, q1, TransitionLabel{"0"}).first;
  m = add_transition(m, q1, q0, TransitionLabel{"1"}, 0.5).first;
  m = add_transition(m, q2, q2, TransitionLabel{"1"}, -1).first;
  m = set_state_flags(m, q0, true, true);
  return m;
}

// Literal DFA plus delta(q_0, 1) = q_2, which makes it total and equivalent to
// the NFA example.
inline Machine paper_dfa_corrected() {
  Machine m = rename_machine(paper_dfa_literal(), "paper-dfa-corrected");
  return add_transition(m, StateId{0}, StateId{2}, TransitionLabel{"1"}).first;
}

inline Machine paper_nfa_without_epsilon() {
  Machine m = paper_nfa();
  m = remove_transition(m, TransitionId{0});
  return remove_transition(m, TransitionId{1});
}

// Reference membership for the NFA example, written from the language
// description only.
inline bool paper_language(const std::string& w) {
  return w.empty() || (w.size() >= 2 && w.compare(w.size() - 2, 2, "01") == 0);
}

inline std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> level{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : level)
      for (char c : alphabet) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// Matrix-based reference semantics: epsilon reachability by Warshall's
// transitive closure, then subset simulation over dense indices.
class ReferenceNfa {
public:
  explicit ReferenceNfa(const Machine& m) {
    for (const auto& [id, st] : m.states()) ids_.push_back(id);
    n_ = ids_.size();
    eps_.assign(n_ * n_, false);
    for (std::size_t i = 0; i < n_; ++i) eps_[i * n_ + i] = true;
    for (const auto& [tid, t] : m.transitions()) {
      std::size_t f = index(t.from), to = index(t.to);
      if (t.label.is_epsilon()) eps_[f * n_ + to] = true;
      else
        for (const auto& s : t.label.symbols()) arrows_.push_back({f, to, s});
    }
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (eps_[i * n_ + k])
          for (std::size_t j = 0; j < n_; ++j)
            if (eps_[k * n_ + j]) eps_[i * n_ + j] = true;
    start_.assign(n_, false);
    final_.assign(n_, false);
    for (StateId q : m.start()) start_[index(q)] = true;
    for (StateId q : m.final_states()) final_[index(q)] = true;
  }

  StateSet closure(const StateSet& s) const { return to_set(close(from_set(s))); }

  StateSet step(const StateSet& s, const std::string& a) const {
    auto active = from_set(s);
    std::vector<bool> next(n_, false);
    for (const auto& arrow : arrows_)
      if (active[arrow.from] && arrow.symbol == a) next[arrow.to] = true;
    return to_set(close(next));
  }

  bool accepts(const std::vector<std::string>& word) const {
    auto cur = close(start_);
    for (const auto& a : word) {
      std::vector<bool> next(n_, false);
      for (const auto& arrow : arrows_)
        if (cur[arrow.from] && arrow.symbol == a) next[arrow.to] = true;
      cur = close(next);
    }
    for (std::size_t i = 0; i < n_; ++i)
      if (cur[i] && final_[i]) return true;
    return false;
  }

private:
  struct Arrow {
    std::size_t from, to;
    std::string symbol;
  };

  std::size_t index(StateId q) const {
    return static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), q) - ids_.begin());
  }

  std::vector<bool> close(const std::vector<bool>& s) const {
    std::vector<bool> out(n_, false);
    for (std::size_t i = 0; i < n_; ++i)
      if (s[i])
        for (std::size_t j = 0; j < n_; ++j)
          if (eps_[i * n_ + j]) out[j] = true;
    return out;
  }

  std::vector<bool> from_set(const StateSet& s) const {
    std::vector<bool> out(n_, false);
    for (StateId q : s) out[index(q)] = true;
    return out;
  }

  StateSet to_set(const std::vector<bool>& v) const {
    StateSet out;
    for (std::size_t i = 0; i < n_; ++i)
      if (v[i]) out.insert(ids_[i]);
    return out;
  }

  std::vector<StateId> ids_;
  std::size_t n_ = 0;
  std::vector<bool> eps_;
  std::vector<Arrow> arrows_;
  std::vector<bool> start_, final_;
};

struct RandomMachineSpec {
  std::size_t max_states = 5;
  std::vector<std::string> symbols{"a", "b"};
  double epsilon_probability = 0.2;
  std::size_t max_transitions = 10;
};

// Random machine with 1..max_states states, arbitrary start/final subsets,
// and labels drawn from the symbols (or a lone epsilon).
inline Machine random_machine(std::mt19937_64& rng, const RandomMachineSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> n_states(1, spec.max_states);
  std::uniform_int_distribution<std::size_t> n_trans(0, spec.max_transitions);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution eps(spec.epsilon_probability);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);

  Machine m = new_machine("random");
  const std::size_t n = n_states(rng);
  std::vector<StateId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto [next, id] = add_state(m, std::nullopt, {coord(rng), coord(rng)});
    m = set_state_flags(next, id, coin(rng) && coin(rng), coin(rng));
    ids.push_back(id);
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t t = n_trans(rng);
  for (std::size_t i = 0; i < t; ++i) {
    std::set<std::string> label;
    if (eps(rng)) {
      label.insert("\\epsilon");
    } else {
      for (const auto& s : spec.symbols)
        if (coin(rng)) label.insert(s);
      if (label.empty()) label.insert(spec.symbols[pick(rng) % spec.symbols.size()]);
    }
    m = add_transition(m, ids[pick(rng)], ids[pick(rng)], TransitionLabel(label), coord(rng) / 5.0).first;
  }
  return m;
}

inline StateSet random_subset(std::mt19937_64& rng, const Machine& m) {
  std::bernoulli_distribution coin(0.5);
  StateSet s;
  for (const auto& [id, st] : m.states())
    if (coin(rng)) s.insert(id);
  return s;
}

}  // namespace finsm::testing
