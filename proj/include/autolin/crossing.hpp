#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autolin/autofn.hpp"
#include "autolin/tm.hpp"

namespace autolin {

struct BlowupError : Error {
  using Error::Error;
};

struct LocalVisit {
  State in;        // state on entering the cell
  State out;       // state after the step
  Dir dir;         // where the head went
  TapeSymbol write;
  friend bool operator==(const LocalVisit&, const LocalVisit&) = default;
};

/// What one cell sees during a whole run: its initial symbol and the steps
/// executed on it, in order. Zero visits means the cell keeps its symbol.
struct LocalComputation {
  TapeSymbol base;
  std::vector<LocalVisit> visits;

  TapeSymbol final_symbol() const { return visits.empty() ? base : visits.back().write; }

  /// Crossings on the left boundary: entries from the left (R) alternate with
  /// exits to the left (L); likewise on the right boundary, exits first.
  std::vector<std::pair<State, Dir>> left_profile() const {
    std::vector<std::pair<State, Dir>> p;
    bool from_left = true;
    for (auto& v : visits) {
      if (from_left) p.emplace_back(v.in, Dir::R);
      if (v.dir == Dir::L) p.emplace_back(v.out, Dir::L);
      from_left = v.dir == Dir::L;
    }
    return p;
  }
  std::vector<std::pair<State, Dir>> right_profile() const {
    std::vector<std::pair<State, Dir>> p;
    bool from_left = true;
    for (auto& v : visits) {
      if (!from_left) p.emplace_back(v.in, Dir::L);
      if (v.dir == Dir::R) p.emplace_back(v.out, Dir::R);
      from_left = v.dir == Dir::L;
    }
    return p;
  }
};

/// All internally consistent local computations of an interior cell with at
/// most `max_visits` visits, for every base symbol in Σ ∪ {BLANK}. The first
/// visit enters from the left; after a step right the next entry is from the
/// right, after a step left from the left. The last step leaves to the left.
inline std::vector<LocalComputation> enumerate_local(const TuringMachine& m, std::size_t max_visits) {
  std::vector<LocalComputation> out;
  std::vector<TapeSymbol> bases{kBlank};
  for (Symbol s = 0; s < m.input_alphabet().size(); ++s) bases.push_back(m.tape_symbol_of_input(s));
  for (TapeSymbol b : bases) {
    out.push_back({b, {}});
    LocalComputation cur{b, {}};
    std::function<void(TapeSymbol)> extend = [&](TapeSymbol z) {
      if (cur.visits.size() >= max_visits) return;
      for (State q = 0; q < m.size(); ++q) {
        if (m.accepting(q)) continue;
        for (auto& t : m.transitions(q, z)) {
          cur.visits.push_back({q, t.to, t.dir, t.write});
          if (t.dir == Dir::L) out.push_back(cur);
          extend(t.write);
          cur.visits.pop_back();
        }
      }
    };
    extend(b);
  }
  return out;
}

namespace crossing_detail {

struct Key {
  std::vector<State> seq;  // crossings on the boundary right of the last cell read
  bool xdone = false;
  bool ydone = false;
  bool closed = false;  // last cell was (PAD,PAD) and never visited
  auto operator<=>(const Key&) const = default;
};

struct CellResult {
  std::vector<State> right;
  TapeSymbol final_symbol;
  std::size_t visits;
};

class CellSimulator {
 public:
  CellSimulator(const TuringMachine& m, std::size_t max_visits) : m_(m), max_(max_visits) {
    reentry_.resize(m.tape_alphabet_size());
    for (TapeSymbol z = 0; z < m.tape_alphabet_size(); ++z) {
      for (State q = 0; q < m.size(); ++q) {
        if (!m.accepting(q) && !m.transitions(q, z).empty()) reentry_[z].push_back(q);
      }
    }
  }

  const std::vector<CellResult>& run(const std::vector<State>& left, TapeSymbol base) {
    auto key = std::make_pair(left, base);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<CellResult> res;
    if (left.empty()) {
      res.push_back({{}, base, 0});
    } else {
      std::vector<State> right;
      visit(left, 1, left[0], base, 0, right, res);
    }
    return cache_.emplace(key, std::move(res)).first->second;
  }

 private:
  void visit(const std::vector<State>& left, std::size_t idx, State q, TapeSymbol z, std::size_t visits,
             std::vector<State>& right, std::vector<CellResult>& res) {
    if (visits >= max_ || m_.accepting(q)) return;
    for (auto& t : m_.transitions(q, z)) {
      if (t.dir == Dir::L) {
        if (idx >= left.size() || left[idx] != t.to) continue;
        if (idx + 1 == left.size()) {
          res.push_back({right, t.write, visits + 1});
        } else {
          visit(left, idx + 2, left[idx + 1], t.write, visits + 1, right, res);
        }
      } else {
        right.push_back(t.to);
        for (State back : reentry_[t.write]) {
          right.push_back(back);
          visit(left, idx, back, t.write, visits + 1, right, res);
          right.pop_back();
        }
        right.pop_back();
      }
    }
  }

  const TuringMachine& m_;
  std::size_t max_;
  std::vector<std::vector<State>> reentry_;
  std::map<std::pair<std::vector<State>, TapeSymbol>, std::vector<CellResult>> cache_;
};

/// Crossing sequences on the boundary between cell 0 and cell 1: the run
/// starts on the marker, every return to the marker bounces right, and the
/// last arrival is in an accepting state.
inline std::vector<std::vector<State>> origin_sequences(const TuringMachine& m, std::size_t max_visits) {
  std::vector<std::vector<State>> out;
  if (m.accepting(m.start())) {
    out.push_back({});
    return out;
  }
  std::vector<State> seq;
  std::function<void(State, std::size_t)> go = [&](State q, std::size_t visits) {
    if (visits >= max_visits) return;
    for (auto& t : m.transitions(q, kLend)) {
      seq.push_back(t.to);
      for (State p = 0; p < m.size(); ++p) {
        if (m.accepting(p)) {
          seq.push_back(p);
          out.push_back(seq);
          seq.pop_back();
        } else if (!m.transitions(p, kLend).empty()) {
          seq.push_back(p);
          go(p, visits + 1);
          seq.pop_back();
        }
      }
      seq.pop_back();
    }
  };
  go(m.start(), 0);
  return out;
}

}  // namespace crossing_detail

/// Two-track alphabet (input, output) with the all-PAD tuple, as read by A.
inline Alphabet crossing_alphabet(const TuringMachine& m) {
  return Alphabet::convolution({m.input_alphabet(), m.output_alphabet()}, true);
}

/// NFA for A: conv(x·PAD^s, y·PAD^t) where the (return-to-origin) machine maps
/// x to y, visits no cell more than `max_visits` times and never reaches the
/// last cell. Each NFA state is the crossing sequence on the boundary just
/// read; reading a symbol guesses a consistent local computation for that cell.
inline Nfa build_A(const TuringMachine& m, std::size_t max_visits, std::size_t state_cap = 2'000'000) {
  using crossing_detail::Key;
  Alphabet conv = crossing_alphabet(m);
  const Alphabet& out = m.output_alphabet();
  std::vector<std::optional<int>> out_of_tape(m.tape_alphabet_size());
  for (Symbol s = 0; s < out.size(); ++s) {
    if (auto t = m.find_symbol(out.token(s))) out_of_tape[*t] = static_cast<int>(s);
  }
  crossing_detail::CellSimulator sim(m, max_visits);

  std::map<Key, State> ids;
  std::vector<Key> keys;
  std::vector<std::vector<std::pair<Symbol, State>>> edges;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) {
      if (keys.size() >= state_cap) {
        throw BlowupError("build_A: more than " + std::to_string(state_cap) + " NFA states; lower the visit bound or raise the cap");
      }
      keys.push_back(std::move(k));
      edges.emplace_back();
    }
    return it->second;
  };
  std::vector<State> starts;
  for (auto& seq : crossing_detail::origin_sequences(m, max_visits)) starts.push_back(intern(Key{seq, false, false, false}));

  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Key k = keys[i];
    for (Symbol s = 0; s < conv.size(); ++s) {
      int a = conv.component(s, 0);
      int c = conv.component(s, 1);
      if (k.closed) {
        if (a == kPad && c == kPad) edges[i].emplace_back(s, static_cast<State>(i));
        continue;
      }
      if (k.xdone && a != kPad) continue;
      if (k.ydone && c != kPad) continue;
      TapeSymbol base = a == kPad ? kBlank : m.tape_symbol_of_input(static_cast<Symbol>(a));
      for (auto& r : sim.run(k.seq, base)) {
        bool ydone = k.ydone;
        if (!ydone) {
          if (r.final_symbol == kBlank) {
            if (c != kPad) continue;
            ydone = true;
          } else {
            if (!out_of_tape[r.final_symbol] || c != *out_of_tape[r.final_symbol]) continue;
          }
        }
        Key nk{r.right, a == kPad, ydone, a == kPad && c == kPad && r.visits == 0};
        State t = intern(std::move(nk));
        edges[i].emplace_back(s, t);
      }
    }
  }
  Nfa n(conv, keys.size());
  for (State s : starts) n.add_start(s);
  for (State q = 0; q < keys.size(); ++q) {
    n.set_accepting(q, keys[q].closed);
    std::sort(edges[q].begin(), edges[q].end());
    edges[q].erase(std::unique(edges[q].begin(), edges[q].end()), edges[q].end());
    for (auto& [s, t] : edges[q]) n.add_transition(q, s, t);
  }
  // Keep only states that can still accept.
  auto live = coreachable_states(n);
  std::vector<State> remap(n.size(), kNoState);
  State next = 0;
  for (State q = 0; q < n.size(); ++q) {
    if (live[q]) remap[q] = next++;
  }
  Nfa trimmed(conv, next);
  for (State s : n.starts()) {
    if (live[s]) trimmed.add_start(remap[s]);
  }
  for (State q = 0; q < n.size(); ++q) {
    if (!live[q]) continue;
    trimmed.set_accepting(remap[q], n.accepting(q));
    for (auto& [s, t] : n.out(q)) {
      if (live[t]) trimmed.add_transition(remap[q], s, remap[t]);
    }
  }
  return trimmed;
}

/// B: words z over the PAD-free tuples with z·(PAD,PAD) a prefix of a word in A.
inline Dfa build_B(const Nfa& a) {
  const Alphabet& conv = a.alphabet();
  if (!conv.is_convolution() || !conv.has_all_pad()) throw AlphabetError("build_B: A must use the all-PAD tuple");
  Dfa d = determinize(right_quotient_symbol(prefix_closure(a), *conv.all_pad_symbol()));
  // Dropping the all-PAD tuple from the alphabet also removes every word that ends with it.
  return minimize(restrict_alphabet(d, conv.with_all_pad(false)));
}

struct ExtractMismatch {
  Word x;
  std::optional<std::vector<std::string>> machine;
  std::optional<Word> extracted;
};

struct ExtractReport {
  bool ok = false;
  std::string message;
  LinearTimeReport linear_time;
  std::size_t visit_bound = 0;
  std::size_t a_states = 0;
  std::size_t b_states = 0;
  std::optional<AutomaticFunction> function;
  std::vector<ExtractMismatch> mismatches;
};

/// Normalize → A → B → functionality and slack, then compare the extracted
/// function with the machine on all inputs up to `validate_len`.
/// `visits` bounds visits per cell of the normalized machine; when absent it
/// is measured on inputs up to `validate_len`.
inline ExtractReport extract_automatic(const TuringMachine& m, std::size_t rate, std::optional<std::size_t> visits,
                                       std::size_t validate_len, std::size_t state_cap = 2'000'000) {
  ExtractReport rep;
  rep.linear_time = check_linear_time(m, rate, validate_len);
  if (!rep.linear_time.pass) {
    rep.message = "precondition failed: machine exceeds " + std::to_string(rate) + "·(|x|+1) steps on input '" +
                  m.input_alphabet().format(rep.linear_time.violations.front().x) + "'";
    return rep;
  }
  TuringMachine n = normalize_return_to_origin(m);
  rep.visit_bound = visits ? *visits : visit_bound_estimate(n, validate_len, rate + 4).value_or(0);
  Nfa a = build_A(n, rep.visit_bound, state_cap);
  rep.a_states = a.size();
  Dfa b = build_B(a);
  rep.b_states = b.size();
  AutomaticRelation rel(b);
  auto verdict = check_functional(rel);
  if (auto* v = std::get_if<FunctionalityViolation>(&verdict)) {
    rep.message = "extracted relation is not functional at input '" + m.input_alphabet().format(v->x) + "'";
    return rep;
  }
  try {
    rep.function = AutomaticFunction::certify(rel);
  } catch (const FunctionalityError& e) {
    rep.message = e.what();
    return rep;
  }
  const Alphabet& out = m.output_alphabet();
  for_each_word(m.input_alphabet().size(), validate_len, [&](const Word& x) {
    auto runs = run_nondet(m, x, rate * (x.size() + 1));
    std::optional<std::vector<std::string>> got;
    if (!runs.accepting.empty()) got = runs.accepting.front().output;
    auto y = evaluate(*rep.function, x);
    std::optional<std::vector<std::string>> want;
    if (y) {
      want.emplace();
      for (Symbol s : *y) want->push_back(out.token(s));
    }
    if (got != want && rep.mismatches.size() < 10) rep.mismatches.push_back({x, got, y});
  });
  if (!rep.mismatches.empty()) {
    rep.message = "c' too small or machine not linear-time: mismatch on input '" +
                  m.input_alphabet().format(rep.mismatches.front().x) + "'";
    return rep;
  }
  rep.ok = true;
  rep.message = "ok";
  return rep;
}

}  // namespace autolin
