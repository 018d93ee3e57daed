#pragma once

#include <array>

#include "autolin/families.hpp"

// Built-in automatic families.

namespace autolin::fixtures {

namespace family_detail {

inline Dfa from_nfa(const Nfa& n) { return minimize(determinize(n)); }

inline Dfa wf_min(const Dfa& d) { return minimize(intersect(d, well_formed_dfa(d.alphabet()))); }

/// Lexicographic comparison state of two words read in parallel; a proper
/// prefix is smaller.
enum Cmp : std::uint8_t { Eq, Lt, Gt };

inline Cmp compare_step(Cmp c, int p, int q) {
  if (c != Eq) return c;
  if (p == q) return Eq;
  if (p == kPad) return Lt;
  if (q == kPad) return Gt;
  return p < q ? Lt : Gt;
}

}  // namespace family_detail

/// L_e = e·{0,1}*, I = {0,1}*.
inline AutomaticFamily extensions() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = Alphabet::convolution({s, s});
  Nfa n(c, 2);
  n.add_start(0);
  n.set_accepting(0);
  n.set_accepting(1);
  for (int a = 0; a < 2; ++a) {
    n.add_transition(0, c.symbol({a, a}), 0);
    n.add_transition(0, c.symbol({kPad, a}), 1);
    n.add_transition(1, c.symbol({kPad, a}), 1);
  }
  return AutomaticFamily(universal(s), family_detail::from_nfa(n));
}

/// Closed lexicographic intervals over {a,b}: index conv(lo, hi) with lo ≤ hi,
/// L_e = {x : lo ≤ x ≤ hi}.
inline AutomaticFamily intervals() {
  using namespace family_detail;
  Alphabet s = Alphabet::plain({"a", "b"});
  Alphabet ia = Alphabet::convolution({s, s});
  Alphabet c = Alphabet::convolution({ia, s});
  // Key: lo≤hi, lo≤x, x≤hi comparison states and the ended-bits of lo, hi, x.
  using Key = std::array<std::uint8_t, 4>;
  auto step3 = [](const Key& k, int lo, int hi, int x) -> std::optional<Key> {
    std::uint8_t ended = k[3];
    int v[3] = {lo, hi, x};
    for (int i = 0; i < 3; ++i) {
      if (v[i] == kPad) {
        ended |= static_cast<std::uint8_t>(1u << i);
      } else if (ended & (1u << i)) {
        return std::nullopt;
      }
    }
    return Key{compare_step(static_cast<Cmp>(k[0]), lo, hi), compare_step(static_cast<Cmp>(k[1]), lo, x),
               compare_step(static_cast<Cmp>(k[2]), x, hi), ended};
  };
  Dfa member = explore_dfa(
      c, Key{Eq, Eq, Eq, 0},
      [&](const Key& k, Symbol sym) -> std::optional<Key> {
        int e = c.component(sym, 0);
        int lo = e == kPad ? kPad : ia.component(static_cast<Symbol>(e), 0);
        int hi = e == kPad ? kPad : ia.component(static_cast<Symbol>(e), 1);
        return step3(k, lo, hi, c.component(sym, 1));
      },
      [](const Key& k) { return k[0] != Gt && k[1] != Gt && k[2] != Gt; });
  Dfa index = explore_dfa(
      ia, Key{Eq, Eq, Eq, 4},
      [&](const Key& k, Symbol sym) -> std::optional<Key> {
        return step3(k, ia.component(sym, 0), ia.component(sym, 1), kPad);
      },
      [](const Key& k) { return k[0] != Gt; });
  return AutomaticFamily(minimize(index), minimize(member));
}

/// I = 0*, L_e = {x ∈ {0,1}* : |x| ≠ |e|}.
inline AutomaticFamily length_exclusion() {
  Alphabet is = Alphabet::plain({"0"});
  Alphabet ws = Alphabet::plain({"0", "1"});
  Alphabet c = Alphabet::convolution({is, ws});
  // 0: both running, 1: x ended first, 2: e ended first.
  Nfa n(c, 3);
  n.add_start(0);
  n.set_accepting(1);
  n.set_accepting(2);
  for (int b = 0; b < 2; ++b) {
    n.add_transition(0, c.symbol({0, b}), 0);
    n.add_transition(0, c.symbol({kPad, b}), 2);
    n.add_transition(2, c.symbol({kPad, b}), 2);
  }
  n.add_transition(0, c.symbol({0, kPad}), 1);
  n.add_transition(1, c.symbol({0, kPad}), 1);
  return AutomaticFamily(universal(is), family_detail::from_nfa(n));
}

/// Indices {0,1}*; words over {0,1,2}: L_ε = {0,1}*, L_{x1} = {0,1}* ∪ {x2},
/// L_{x0} = ({0,1}* ∪ {x2}) − {x}.
inline AutomaticFamily thm35() {
  using namespace family_detail;
  Alphabet is = Alphabet::plain({"0", "1"});
  Alphabet ws = Alphabet::plain({"0", "1", "2"});
  Alphabet c = Alphabet::convolution({is, ws});
  // e = ε, x ∈ {0,1}*.
  Nfa eps(c, 2);
  eps.add_start(0);
  eps.set_accepting(0);
  eps.set_accepting(1);
  for (int a = 0; a < 2; ++a) {
    eps.add_transition(0, c.symbol({kPad, a}), 1);
    eps.add_transition(1, c.symbol({kPad, a}), 1);
  }
  // x = e with its last symbol replaced by 2.
  Nfa two(c, 2);
  two.add_start(0);
  two.set_accepting(1);
  for (int a = 0; a < 2; ++a) {
    two.add_transition(0, c.symbol({a, a}), 0);
    two.add_transition(0, c.symbol({a, 2}), 1);
  }
  // x = e without its last symbol, which is 0.
  Nfa drop0(c, 2);
  drop0.add_start(0);
  drop0.set_accepting(1);
  for (int a = 0; a < 2; ++a) drop0.add_transition(0, c.symbol({a, a}), 0);
  drop0.add_transition(0, c.symbol({0, kPad}), 1);
  // e ends with `last`, x ∈ {0,1}*.
  auto ends_with = [&](int last) {
    using Key = std::array<int, 3>;  // last index symbol (-1 none), e ended, x ended
    return explore_dfa(
        c, Key{-1, 0, 0},
        [&](const Key& k, Symbol s) -> std::optional<Key> {
          int p = c.component(s, 0), q = c.component(s, 1);
          Key n = k;
          if (p == kPad) {
            n[1] = 1;
          } else {
            if (k[1]) return std::nullopt;
            n[0] = p;
          }
          if (q == kPad) {
            n[2] = 1;
          } else {
            if (k[2] || q == 2) return std::nullopt;
          }
          return n;
        },
        [&](const Key& k) { return k[0] == last; });
  };
  Dfa member = unite(unite(from_nfa(eps), from_nfa(two)), unite(ends_with(1), difference(ends_with(0), from_nfa(drop0))));
  return AutomaticFamily(universal(is), wf_min(member));
}

/// I = {0,1}*, L_e = {0,1}* − {e}.
inline AutomaticFamily complement_singleton() {
  Alphabet s = Alphabet::plain({"0", "1"});
  Alphabet c = Alphabet::convolution({s, s});
  Dfa d(c, 2, 0);
  d.set_accepting(1);
  for (Symbol sym = 0; sym < c.size(); ++sym) {
    d.set_next(0, sym, c.component(sym, 0) == c.component(sym, 1) ? 0 : 1);
    d.set_next(1, sym, 1);
  }
  return AutomaticFamily(universal(s), family_detail::wf_min(d));
}

/// One infinite set plus its finite subsets: I = {1} ∪ 0*, L_1 = 0*,
/// L_{0^n} = {0^m : m ≤ n}.
inline AutomaticFamily gold() {
  Alphabet is = Alphabet::plain({"0", "1"});
  Alphabet ws = Alphabet::plain({"0"});
  Alphabet c = Alphabet::convolution({is, ws});
  Nfa n(c, 4);
  n.add_start(0);
  for (State q = 0; q < 4; ++q) n.set_accepting(q);
  n.add_transition(0, c.symbol({1, 0}), 1);
  n.add_transition(0, c.symbol({1, kPad}), 1);
  n.add_transition(1, c.symbol({kPad, 0}), 1);
  n.add_transition(0, c.symbol({0, 0}), 2);
  n.add_transition(2, c.symbol({0, 0}), 2);
  n.add_transition(0, c.symbol({0, kPad}), 3);
  n.add_transition(2, c.symbol({0, kPad}), 3);
  n.add_transition(3, c.symbol({0, kPad}), 3);
  Nfa idx(is, 3);
  idx.add_start(0);
  idx.set_accepting(0);
  idx.set_accepting(1);
  idx.set_accepting(2);
  idx.add_transition(0, 0, 1);
  idx.add_transition(1, 0, 1);
  idx.add_transition(0, 1, 2);
  return AutomaticFamily(family_detail::from_nfa(idx), family_detail::wf_min(family_detail::from_nfa(n)));
}

struct NamedFamily {
  std::string name;
  AutomaticFamily (*make)();
};

inline const std::vector<NamedFamily>& family_fixtures() {
  static const std::vector<NamedFamily> all{{"extensions", extensions},
                                            {"intervals", intervals},
                                            {"length-excl", length_exclusion},
                                            {"thm35", thm35},
                                            {"complement-singleton", complement_singleton},
                                            {"gold", gold}};
  return all;
}

}  // namespace autolin::fixtures
