#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/fixtures.hpp"
#include "finsm/algorithms.hpp"

using namespace finsm;
using namespace finsm::testing;

namespace {

const StateId q0{0}, q1{1}, q2{2}, q3{3};

Word w(std::string_view s) { return split_chars(s); }

}  // namespace

TEST_CASE("infer_alphabet") {
  CHECK(infer_alphabet(paper_nfa()) == std::set<Symbol>{"0", "1"});
  CHECK(infer_alphabet(new_machine("M")).empty());

  Machine only_eps = new_machine("M");
  StateId a;
  std::tie(only_eps, a) = add_state(only_eps, std::nullopt, {0, 0});
  only_eps = add_transition(only_eps, a, a, TransitionLabel::epsilon()).first;
  CHECK(infer_alphabet(only_eps).empty());
}

TEST_CASE("epsilon_closure") {
  Machine m = paper_nfa();
  CHECK(epsilon_closure(m, {q0}) == StateSet{q0, q1, q3});
  CHECK(epsilon_closure(m, {q2}) == StateSet{q2});
  CHECK(epsilon_closure(m, {}).empty());
}

TEST_CASE("epsilon_closure follows chains and cycles") {
  Machine m = new_machine("chain");
  StateId a, b, c;
  std::tie(m, a) = add_state(m, std::nullopt, {0, 0});
  std::tie(m, b) = add_state(m, std::nullopt, {0, 0});
  std::tie(m, c) = add_state(m, std::nullopt, {0, 0});
  m = add_transition(m, a, b, TransitionLabel::epsilon()).first;
  m = add_transition(m, b, c, TransitionLabel::epsilon()).first;
  m = add_transition(m, c, a, TransitionLabel::epsilon()).first;
  CHECK(epsilon_closure(m, {b}) == StateSet{a, b, c});
}

TEST_CASE("step") {
  Machine m = paper_nfa();
  ReferenceNfa ref(m);
  CHECK(step(m, {q0, q1, q3}, "0") == StateSet{q1, q2});
  CHECK(step(m, {q1, q2}, "1") == StateSet{q1, q3});
  CHECK(ref.step({q0, q1, q3}, "0") == StateSet{q1, q2});
  CHECK(ref.step({q1, q2}, "1") == StateSet{q1, q3});
  CHECK(step(m, {}, "0").empty());
  CHECK(step(m, {q0, q1, q3}, "x").empty());
}

TEST_CASE("run_tape on the NFA example") {
  Machine m = paper_nfa();

  auto empty = run_tape(m, Word{});
  CHECK(empty.accepted);
  CHECK(empty.trace == std::vector<StateSet>{{q0, q1, q3}});

  auto r = run_tape(m, w("1101"));
  CHECK(r.accepted);
  CHECK(r.trace == std::vector<StateSet>{{q0, q1, q3}, {q1}, {q1}, {q1, q2}, {q1, q3}});

  CHECK_FALSE(run_tape(m, w("10")).accepted);
  CHECK_FALSE(run_tape(m, w("011")).accepted);
  CHECK(run_tape(m, w("0101")).accepted);
}

TEST_CASE("run_tape with no start state rejects everything") {
  Machine m = set_state_flags(paper_nfa(), q0, false, std::nullopt);
  auto r = run_tape(m, w("01"));
  CHECK_FALSE(r.accepted);
  CHECK(r.trace.size() == 3);
  for (const auto& s : r.trace) CHECK(s.empty());
}

TEST_CASE("run_tape rejects epsilon on the tape") {
  Word tape{"0", std::string(kEpsilon)};
  try {
    run_tape(paper_nfa(), tape);
    FAIL("expected EpsilonOnTape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EpsilonOnTape);
  }
}

TEST_CASE("validate_as_dfa: empty machine has no start state") {
  auto v = validate_as_dfa(new_machine("M"));
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::NoStartState);
  CHECK(classify(new_machine("M")) == MachineKind::NFA);
}

TEST_CASE("validate_as_dfa: epsilon arrows at the first state") {
  auto v = validate_as_dfa(paper_nfa());
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::EpsilonTransition);
  CHECK(v.error->state == q0);
  CHECK(v.error->message == "epsilon transition at state q_0'");
}

TEST_CASE("validate_as_dfa: NFA example without epsilon arrows") {
  Machine m = paper_nfa_without_epsilon();
  // q_1' has two arrows carrying 0, which outranks the missing arrows.
  auto v = validate_as_dfa(m);
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::NondeterministicTransition);
  CHECK(v.error->state == q1);
  CHECK(v.error->symbol == "0");

  // q_2' lacking an arrow for 0 is among the reported problems.
  auto all = dfa_violations(m);
  auto missing_q2 = std::find_if(all.begin(), all.end(), [](const ValidationError& e) {
    return e.code == ValidationCode::MissingTransition && e.state == q2 && e.symbol == "0";
  });
  CHECK(missing_q2 != all.end());

  // Once q_1' is deterministic, the first missing arrow belongs to q_0'.
  Machine det = remove_transition(m, TransitionId{2});
  auto v2 = validate_as_dfa(det);
  REQUIRE_FALSE(v2.ok());
  CHECK(v2.error->code == ValidationCode::MissingTransition);
  CHECK(v2.error->state == q0);
  CHECK(v2.error->symbol == "0");
}

TEST_CASE("validate_as_dfa: violation ordering") {
  auto all = dfa_violations(paper_nfa());
  REQUIRE(all.size() >= 3);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].code <= all[i].code);
}

TEST_CASE("validate_as_dfa: literal DFA example misses q_0 on 1") {
  auto v = validate_as_dfa(paper_dfa_literal());
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::MissingTransition);
  CHECK(v.error->state == q0);
  CHECK(v.error->symbol == "1");
}

TEST_CASE("validate_as_dfa: corrected DFA example is a DFA") {
  auto v = validate_as_dfa(paper_dfa_corrected());
  REQUIRE(v.ok());
  CHECK(v.dfa->start == q0);
  CHECK(v.dfa->delta.size() == 6);
  CHECK(v.dfa->delta.at({q0, "1"}) == q2);
  CHECK(classify(paper_dfa_corrected()) == MachineKind::DFA);
}

TEST_CASE("validate_as_dfa: multiple start states") {
  Machine m = set_state_flags(paper_dfa_corrected(), q1, true, std::nullopt);
  auto v = validate_as_dfa(m);
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::MultipleStartStates);
}

TEST_CASE("validate_as_dfa: parallel arrows on one symbol are nondeterministic") {
  Machine m = add_transition(paper_dfa_corrected(), q0, q1, TransitionLabel{"0"}).first;
  auto v = validate_as_dfa(m);
  REQUIRE_FALSE(v.ok());
  CHECK(v.error->code == ValidationCode::NondeterministicTransition);
  CHECK(v.error->state == q0);
}

TEST_CASE("classify") {
  CHECK(classify(paper_nfa()) == MachineKind::NFA);
  CHECK(classify(subset_construction(paper_nfa())) == MachineKind::DFA);
}

TEST_CASE("subset_construction of the NFA example") {
  Machine d = subset_construction(paper_nfa());
  CHECK(d.states().size() == 4);
  CHECK(d.final_states().size() == 2);
  REQUIRE(d.start().size() == 1);
  CHECK(d.state_name(*d.start().begin()) == "{q_0',q_1',q_3'}");

  std::set<std::string> names;
  for (const auto& [id, st] : d.states()) names.insert(st.name);
  CHECK(names == std::set<std::string>{"{q_0',q_1',q_3'}", "{q_1',q_2'}", "{q_1'}", "{q_1',q_3'}"});
  std::set<std::string> finals;
  for (StateId q : d.final_states()) finals.insert(d.state_name(q));
  CHECK(finals == std::set<std::string>{"{q_0',q_1',q_3'}", "{q_1',q_3'}"});
}

TEST_CASE("subset_construction materializes a dead state") {
  Machine d = subset_construction(paper_dfa_literal());
  CHECK(d.find_state("{}").has_value());
  CHECK(validate_as_dfa(d).ok());
  CHECK(equivalent_up_to(d, paper_dfa_literal(), 10).equivalent);
}

TEST_CASE("subset_construction of an empty machine") {
  Machine d = subset_construction(new_machine("M"));
  REQUIRE(d.states().size() == 1);
  CHECK(d.states().begin()->second.name == "{}");
  CHECK(d.final_states().empty());
  CHECK(d.transitions().empty());
}

TEST_CASE("subset_construction preserves a DFA's language") {
  Machine d = subset_construction(paper_dfa_corrected());
  CHECK(validate_as_dfa(d).ok());
  CHECK(equivalent_up_to(d, paper_dfa_corrected(), 10).equivalent);
}

TEST_CASE("equivalent_up_to") {
  Machine nfa = paper_nfa();
  CHECK(equivalent_up_to(nfa, subset_construction(nfa), 10).equivalent);
  CHECK(equivalent_up_to(nfa, nfa, 5).equivalent);

  auto r = equivalent_up_to(nfa, new_machine("nothing"), 0);
  CHECK_FALSE(r.equivalent);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->empty());
}

TEST_CASE("equivalent_up_to returns the shortlex-first difference") {
  // The literal DFA wrongly rejects "1...01"-style words; the first one is 101.
  auto r = equivalent_up_to(paper_nfa(), paper_dfa_literal(), 6);
  CHECK_FALSE(r.equivalent);
  CHECK(r.counterexample == w("101"));
  CHECK(equivalent_up_to(paper_nfa(), paper_dfa_literal(), 2).equivalent);
  CHECK(equivalent_up_to(paper_nfa(), paper_dfa_corrected(), 12).equivalent);
}

TEST_CASE("format_definition of the NFA example") {
  const std::string expected =
      "M = (Q, Σ, Δ, S, F)\n"
      "Q = {q_0', q_1', q_2', q_3'}\n"
      "Σ = {0, 1}\n"
      "Δ(q_0', ε) = {q_1', q_3'}\n"
      "Δ(q_1', 0) = {q_1', q_2'}\n"
      "Δ(q_1', 1) = {q_1'}\n"
      "Δ(q_2', 1) = {q_3'}\n"
      "S = {q_0'}\n"
      "F = {q_3'}\n";
  CHECK(format_definition(paper_nfa()) == expected);
  CHECK(format_definition(paper_nfa()) == format_definition(paper_nfa()));
}

TEST_CASE("format_definition of the corrected DFA example") {
  const std::string expected =
      "M = (Q, Σ, δ, s, F)\n"
      "Q = {q_0, q_1, q_2}\n"
      "Σ = {0, 1}\n"
      "δ(q_0, 0) = q_1\n"
      "δ(q_0, 1) = q_2\n"
      "δ(q_1, 0) = q_1\n"
      "δ(q_1, 1) = q_0\n"
      "δ(q_2, 0) = q_1\n"
      "δ(q_2, 1) = q_2\n"
      "s = q_0\n"
      "F = {q_0}\n";
  CHECK(format_definition(paper_dfa_corrected()) == expected);
}

TEST_CASE("format_definition of an empty machine") {
  std::string text = format_definition(new_machine("M"));
  CHECK(text.find("Q = {}") != std::string::npos);
  CHECK(text.find("Σ = {}") != std::string::npos);
  CHECK(text.find("S = {}") != std::string::npos);
  CHECK(text.find("F = {}") != std::string::npos);
}
