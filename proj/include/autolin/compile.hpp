#pragma once

#include <deque>
#include <map>
#include <string>

#include "autolin/autofn.hpp"
#include "autolin/tm.hpp"

namespace autolin {

/// Graph DFA over conv(Σ, Δ) with the all-PAD tuple that accepts exactly
/// conv(x, f(x))·(PAD,PAD). States 0..useful-1 are the useful ones (start is
/// 0); anything else is dead.
struct PreparedGraph {
  Dfa dfa;
  std::size_t useful = 0;
};

inline PreparedGraph prepare(const AutomaticFunction& f) {
  const Alphabet& conv = f.graph().alphabet();
  Dfa g = minimize(intersect(f.graph(), well_formed_dfa(conv)));
  Alphabet full = conv.with_all_pad(true);
  const Symbol pad2 = *full.all_pad_symbol();
  // The all-PAD tuple is the last index, so the other indices coincide.
  Dfa p(full, g.size() + 1, g.start());
  const State fin = static_cast<State>(g.size());
  p.set_accepting(fin);
  for (State q = 0; q < g.size(); ++q) {
    for (Symbol s = 0; s < conv.size(); ++s) p.set_next(q, s, g.next(q, s));
  }
  for (State q = 0; q < g.size(); ++q) {
    if (g.accepting(q)) p.set_next(q, pad2, fin);
  }
  p.complete();
  p = minimize(p);
  auto reach = reachable_states(p);
  auto live = coreachable_states(p);
  // Renumber: useful states first in their current (BFS) order, the rest after.
  std::vector<State> order;
  for (State q = 0; q < p.size(); ++q) {
    if (reach[q] && live[q]) order.push_back(q);
  }
  std::size_t useful = order.size();
  for (State q = 0; q < p.size(); ++q) {
    if (!(reach[q] && live[q])) order.push_back(q);
  }
  std::vector<State> pos(p.size());
  for (State i = 0; i < order.size(); ++i) pos[order[i]] = i;
  Dfa r(full, p.size(), pos[p.start()]);
  for (State q = 0; q < p.size(); ++q) {
    r.set_accepting(pos[q], p.accepting(q));
    for (Symbol s = 0; s < full.size(); ++s) r.set_next(pos[q], s, pos[p.next(q, s)]);
  }
  return {std::move(r), useful};
}

namespace compile_detail {

/// Mark vector over the useful states: '+' exactly one path, '*' several, '-' none.
using Marks = std::string;

inline Marks advance(const PreparedGraph& pg, const Marks& v, int x) {
  const Alphabet& a = pg.dfa.alphabet();
  const int out_n = static_cast<int>(a.track(1).size());
  std::vector<int> count(pg.useful, 0);
  std::vector<bool> star(pg.useful, false);
  for (State d = 0; d < pg.useful; ++d) {
    if (v[d] == '-') continue;
    for (int yi = 0; yi <= out_n; ++yi) {
      int y = yi == out_n ? kPad : yi;
      std::vector<int> c{x, y};
      State t = pg.dfa.next(d, *a.symbol_of(c));
      if (t >= pg.useful) continue;
      if (v[d] == '*') {
        star[t] = true;
      } else {
        ++count[t];
      }
    }
  }
  Marks u(pg.useful, '-');
  for (State d = 0; d < pg.useful; ++d) {
    if (star[d] || count[d] >= 2) {
      u[d] = '*';
    } else if (count[d] == 1) {
      u[d] = '+';
    }
  }
  return u;
}

inline bool dead(const Marks& v) { return v.find_first_not_of('-') == std::string::npos; }

}  // namespace compile_detail

/// Builds the deterministic two-pass machine for f: a forward sweep replaces
/// each cell by (x_k, marks before k) and stops on the first cell whose
/// (PAD,PAD) successor is uniquely reached; a backward sweep then rebuilds
/// the output right to left from the marks.
inline TuringMachine compile(const AutomaticFunction& f) {
  using namespace compile_detail;
  PreparedGraph pg = prepare(f);
  const Dfa& g = pg.dfa;
  const Alphabet& conv = g.alphabet();
  const Alphabet& in = f.input_alphabet();
  const Alphabet& out = f.output_alphabet();
  const Symbol pad2 = *conv.all_pad_symbol();

  TuringMachine m(in, out);
  State start = m.add_state("start");
  State fwd1 = m.add_state("fwd1");
  State accept = m.add_state("accept", true);
  m.set_start(start);
  m.add_transition(start, kLend, fwd1, kLend, Dir::R);

  auto out_symbol = [&](int y) { return y == kPad ? kBlank : m.symbol(out.token(static_cast<Symbol>(y))); };

  // x = ε: the output is the constant f(ε), written directly.
  if (auto y0 = evaluate(f, Word{})) {
    if (y0->empty()) {
      m.add_transition(fwd1, kBlank, accept, kBlank, Dir::L);
    } else {
      State cur = fwd1;
      for (std::size_t j = 0; j < y0->size(); ++j) {
        State nxt = j + 1 == y0->size() ? accept : m.add_state("emit" + std::to_string(j + 1));
        m.add_transition(cur, kBlank, nxt, out_symbol(static_cast<int>((*y0)[j])), Dir::R);
        cur = nxt;
      }
    }
  }
  if (pg.useful == 0) return m;

  struct Composite {
    int x;
    Marks v;
    bool first;
  };
  std::vector<Composite> composites;
  auto composite = [&](int x, const Marks& v, bool first) {
    std::string tok = "[" + (x == kPad ? kPadToken : in.token(static_cast<Symbol>(x))) + "|" + v + (first ? "|^" : "") + "]";
    bool fresh = !m.find_symbol(tok);
    TapeSymbol s = m.symbol(tok);
    if (fresh) composites.push_back({x, v, first});
    return s;
  };

  std::map<Marks, State> fwd;
  std::deque<Marks> queue;
  auto fwd_state = [&](const Marks& v) {
    auto [it, fresh] = fwd.emplace(v, 0);
    if (fresh) {
      it->second = m.add_state("fwd:" + v);
      queue.push_back(v);
    }
    return it->second;
  };
  std::vector<State> back(pg.useful);
  for (State d = 0; d < pg.useful; ++d) back[d] = m.add_state("back:" + std::to_string(d));

  Marks seed(pg.useful, '-');
  seed[g.start()] = '+';
  for (Symbol a = 0; a < in.size(); ++a) {
    Marks u = advance(pg, seed, static_cast<int>(a));
    if (dead(u)) continue;
    m.add_transition(fwd1, m.tape_symbol_of_input(a), fwd_state(u), composite(static_cast<int>(a), seed, true), Dir::R);
  }
  while (!queue.empty()) {
    Marks v = queue.front();
    queue.pop_front();
    State q = fwd.at(v);
    for (Symbol a = 0; a < in.size(); ++a) {
      Marks u = advance(pg, v, static_cast<int>(a));
      if (dead(u)) continue;
      m.add_transition(q, m.tape_symbol_of_input(a), fwd_state(u), composite(static_cast<int>(a), v, false), Dir::R);
    }
    Marks u = advance(pg, v, kPad);
    std::optional<State> fin;
    bool ambiguous = false;
    for (State d = 0; d < pg.useful; ++d) {
      if (!g.accepting(d)) continue;
      if (u[d] == '+') fin = d;
      if (u[d] == '*') ambiguous = true;
    }
    if (ambiguous) continue;
    if (fin) {
      std::optional<State> pred;
      for (State d = 0; d < pg.useful; ++d) {
        if (v[d] == '+' && g.next(d, pad2) == *fin) pred = d;
      }
      if (pred) m.add_transition(q, kBlank, back[*pred], kBlank, Dir::L);
      continue;
    }
    if (dead(u)) continue;
    m.add_transition(q, kBlank, fwd_state(u), composite(kPad, v, false), Dir::R);
  }

  const int out_n = static_cast<int>(out.size());
  for (const Composite& c : composites) {
    TapeSymbol s = *m.find_symbol("[" + (c.x == kPad ? kPadToken : in.token(static_cast<Symbol>(c.x))) + "|" + c.v +
                                  (c.first ? "|^" : "") + "]");
    for (State target = 0; target < pg.useful; ++target) {
      std::optional<std::pair<State, int>> found;
      bool unique = true;
      for (State d = 0; d < pg.useful; ++d) {
        if (c.v[d] != '+') continue;
        for (int yi = 0; yi <= out_n; ++yi) {
          int y = yi == out_n ? kPad : yi;
          if (c.x == kPad && y == kPad) continue;
          std::vector<int> comps{c.x, y};
          if (g.next(d, *conv.symbol_of(comps)) != target) continue;
          if (found) unique = false;
          found = std::pair<State, int>{d, y};
        }
      }
      if (!found || !unique) continue;
      m.add_transition(back[target], s, c.first ? accept : back[found->first], out_symbol(found->second), Dir::L);
    }
  }
  return m;
}

struct CompileCase {
  Word x;
  std::optional<Word> expected;
  std::optional<std::vector<std::string>> produced;
  Outcome outcome;
  std::size_t steps;
  std::size_t bound;
};

struct CompileReport {
  bool pass = true;
  std::size_t slack = 0;
  std::size_t maxlen = 0;
  std::size_t inputs_checked = 0;
  std::size_t max_steps = 0;
  std::size_t max_visits = 0;
  std::size_t tm_states = 0;
  std::size_t tape_symbols = 0;
  std::vector<CompileCase> failures;  // output mismatches or step-bound breaches
};

/// Runs compile(f) on every x with |x| <= maxlen against evaluate(f, x) and
/// the step bound 2·(|x| + c + 2).
inline CompileReport verify_compile(const AutomaticFunction& f, std::size_t maxlen, std::size_t max_reported = 10) {
  TuringMachine m = compile(f);
  CompileReport rep;
  rep.slack = f.slack();
  rep.maxlen = maxlen;
  rep.tm_states = m.size();
  rep.tape_symbols = m.tape_alphabet_size();
  const Alphabet& out = f.output_alphabet();
  for_each_word(f.input_alphabet().size(), maxlen, [&](const Word& x) {
    ++rep.inputs_checked;
    std::size_t bound = 2 * (x.size() + f.slack() + 2);
    auto expected = evaluate(f, x);
    auto r = run_deterministic(m, x, 4 * bound + 8);
    rep.max_steps = std::max(rep.max_steps, r.steps);
    rep.max_visits = std::max(rep.max_visits, r.max_visits());
    bool ok = r.outcome != Outcome::Timeout && r.steps <= bound;
    if (expected) {
      std::vector<std::string> want;
      for (Symbol s : *expected) want.push_back(out.token(s));
      ok = ok && r.accepted() && *r.output == want;
    } else {
      ok = ok && !r.accepted();
    }
    if (!ok) {
      rep.pass = false;
      if (rep.failures.size() < max_reported) rep.failures.push_back({x, expected, r.output, r.outcome, r.steps, bound});
    }
  });
  return rep;
}

}  // namespace autolin
