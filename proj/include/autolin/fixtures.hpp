#pragma once

#include "autolin/autofn.hpp"
#include "autolin/tm.hpp"

// Built-in functions, relations and machines.

namespace autolin::fixtures {

inline Alphabet pair_alphabet(const Alphabet& in, const Alphabet& out) { return Alphabet::convolution({in, out}); }

inline Dfa finish(const Nfa& n) { return minimize(determinize(n)); }

inline AutomaticFunction identity() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = pair_alphabet(s, s);
  Nfa n(c, 1);
  n.add_start(0);
  n.set_accepting(0);
  for (int a = 0; a < 2; ++a) n.add_transition(0, c.symbol({a, a}), 0);
  return AutomaticFunction::certify(finish(n));
}

/// Swaps the first and the last symbol over {0,1,2}.
inline AutomaticFunction exchange() {
  Alphabet s = Alphabet::plain({"0", "1", "2"});
  Alphabet c = pair_alphabet(s, s);
  // 0 start, 1 single symbol read, 2 done, 3 + 3a + b: middle after first a, last b.
  Nfa n(c, 3 + 9);
  n.add_start(0);
  n.set_accepting(0);
  n.set_accepting(1);
  n.set_accepting(2);
  for (int a = 0; a < 3; ++a) {
    n.add_transition(0, c.symbol({a, a}), 1);
    for (int b = 0; b < 3; ++b) {
      State mid = static_cast<State>(3 + 3 * a + b);
      n.add_transition(0, c.symbol({a, b}), mid);
      for (int d = 0; d < 3; ++d) n.add_transition(mid, c.symbol({d, d}), mid);
      n.add_transition(mid, c.symbol({b, a}), 2);
    }
  }
  return AutomaticFunction::certify(finish(n));
}

/// Deletes the first occurrence of 0, if any.
inline AutomaticFunction delete_first_0() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = pair_alphabet(s, s);
  // 0: no 0 seen; 1+b: the next input symbol must be b; 3: output finished.
  Nfa n(c, 4);
  n.add_start(0);
  n.set_accepting(0);
  n.set_accepting(3);
  n.add_transition(0, c.symbol({1, 1}), 0);
  n.add_transition(0, c.symbol({0, kPad}), 3);
  for (int b = 0; b < 2; ++b) n.add_transition(0, c.symbol({0, b}), static_cast<State>(1 + b));
  for (int b = 0; b < 2; ++b) {
    for (int b2 = 0; b2 < 2; ++b2) n.add_transition(static_cast<State>(1 + b), c.symbol({b, b2}), static_cast<State>(1 + b2));
    n.add_transition(static_cast<State>(1 + b), c.symbol({b, kPad}), 3);
  }
  return AutomaticFunction::certify(finish(n));
}

/// x ↦ x·ab over {a,b}; output is two symbols longer than the input.
inline AutomaticFunction append_ab() {
  Alphabet s = Alphabet::plain({"a", "b"});
  Alphabet c = pair_alphabet(s, s);
  Nfa n(c, 3);
  n.add_start(0);
  n.set_accepting(2);
  for (int a = 0; a < 2; ++a) n.add_transition(0, c.symbol({a, a}), 0);
  n.add_transition(0, c.symbol({kPad, 0}), 1);
  n.add_transition(1, c.symbol({kPad, 1}), 2);
  return AutomaticFunction::certify(finish(n));
}

/// {(x, y) : |x| = |y|} over {0,1}; not a function.
inline AutomaticRelation equal_length() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = pair_alphabet(s, s);
  Nfa n(c, 1);
  n.add_start(0);
  n.set_accepting(0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) n.add_transition(0, c.symbol({a, b}), 0);
  }
  return AutomaticRelation(finish(n));
}

/// {(x, x·z)} over {0,1}: every extension of x is related to x; not a function.
inline AutomaticRelation prefix_extension() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = pair_alphabet(s, s);
  Nfa n(c, 2);
  n.add_start(0);
  n.set_accepting(0);
  n.set_accepting(1);
  for (int a = 0; a < 2; ++a) {
    n.add_transition(0, c.symbol({a, a}), 0);
    n.add_transition(0, c.symbol({kPad, a}), 1);
    n.add_transition(1, c.symbol({kPad, a}), 1);
  }
  return AutomaticRelation(finish(n));
}

struct NamedFunction {
  std::string name;
  AutomaticFunction (*make)();
};

inline const std::vector<NamedFunction>& function_fixtures() {
  static const std::vector<NamedFunction> all{
      {"identity", identity}, {"exchange", exchange}, {"delete-first-0", delete_first_0}, {"append-ab", append_ab}};
  return all;
}

/// Identity over {0,1} computed by repeatedly walking back to the marker:
/// marks one symbol per round trip, so the running time is quadratic.
inline TuringMachine zigzag_identity() {
  Alphabet s = Alphabet::plain({"0", "1"});
  TuringMachine m(s);
  State back = m.add_state("back");
  State scan = m.add_state("scan");
  State clean = m.add_state("clean");
  State acc = m.add_state("accept", true);
  m.set_start(back);
  TapeSymbol plain[2] = {m.symbol("0"), m.symbol("1")};
  TapeSymbol marked[2] = {m.symbol("0'"), m.symbol("1'")};
  m.add_transition(back, kLend, scan, kLend, Dir::R);
  for (int b = 0; b < 2; ++b) {
    m.add_transition(back, plain[b], back, plain[b], Dir::L);
    m.add_transition(back, marked[b], back, marked[b], Dir::L);
    m.add_transition(scan, marked[b], scan, marked[b], Dir::R);
    m.add_transition(scan, plain[b], back, marked[b], Dir::L);
    m.add_transition(clean, marked[b], clean, plain[b], Dir::L);
  }
  m.add_transition(scan, kBlank, clean, kBlank, Dir::L);
  m.add_transition(clean, kLend, acc, kLend, Dir::R);
  return m;
}

/// Identity over {0,1} in one sweep: walk right to the blank, accept there.
inline TuringMachine sweep_identity() {
  Alphabet s = Alphabet::plain({"0", "1"});
  TuringMachine m(s);
  State start = m.add_state("start");
  State go = m.add_state("go");
  State acc = m.add_state("accept", true);
  m.set_start(start);
  m.add_transition(start, kLend, go, kLend, Dir::R);
  for (const char* t : {"0", "1"}) m.add_transition(go, m.symbol(t), go, m.symbol(t), Dir::R);
  m.add_transition(go, kBlank, acc, kBlank, Dir::L);
  return m;
}

}  // namespace autolin::fixtures
