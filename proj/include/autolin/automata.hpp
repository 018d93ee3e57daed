#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "autolin/alphabet.hpp"

namespace autolin {

using State = std::uint32_t;
inline constexpr State kNoState = static_cast<State>(-1);

/// Complete deterministic finite automaton over an Alphabet.
class Dfa {
 public:
  Dfa() = default;

  /// Creates `n` states with every transition undefined; call complete()
  /// once the table is filled to route the gaps into a sink.
  Dfa(Alphabet alphabet, std::size_t n, State start = 0)
      : alphabet_(std::move(alphabet)),
        n_(n),
        start_(start),
        accepting_(n, false),
        delta_(n * alphabet_.size(), kNoState) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return n_; }
  State start() const { return start_; }
  void set_start(State s) { start_ = s; }
  bool accepting(State q) const { return accepting_[q]; }
  void set_accepting(State q, bool v = true) { accepting_[q] = v; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  void set_next(State q, Symbol a, State to) { delta_[q * alphabet_.size() + a] = to; }

  State add_state(bool accept = false) {
    delta_.resize(delta_.size() + alphabet_.size(), kNoState);
    accepting_.push_back(accept);
    if (!names_.empty()) names_.push_back("q" + std::to_string(n_));
    return static_cast<State>(n_++);
  }

  /// Routes undefined transitions into a fresh non-accepting sink (only if needed).
  void complete() {
    if (std::find(delta_.begin(), delta_.end(), kNoState) == delta_.end()) return;
    State sink = add_state(false);
    if (!names_.empty()) names_.back() = unique_name("sink");
    for (auto& t : delta_) {
      if (t == kNoState) t = sink;
    }
  }

  bool accepts(const Word& w) const {
    State q = start_;
    for (Symbol a : w) {
      if (a >= alphabet_.size()) return false;
      q = next(q, a);
    }
    return accepting_[q];
  }

  std::string name(State q) const { return names_.empty() ? "q" + std::to_string(q) : names_[q]; }
  void set_names(std::vector<std::string> names) { names_ = std::move(names); }
  bool has_names() const { return !names_.empty(); }

 private:
  std::string unique_name(const std::string& base) const {
    std::string cand = base;
    for (int i = 1; std::find(names_.begin(), names_.end(), cand) != names_.end(); ++i) {
      cand = base + std::to_string(i);
    }
    return cand;
  }

  Alphabet alphabet_;
  std::size_t n_ = 0;
  State start_ = 0;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
  std::vector<std::string> names_;
};

/// Nondeterministic finite automaton (no epsilon moves).
class Nfa {
 public:
  Nfa() = default;
  Nfa(Alphabet alphabet, std::size_t n) : alphabet_(std::move(alphabet)), accepting_(n, false), out_(n) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return out_.size(); }
  const std::vector<State>& starts() const { return starts_; }
  void add_start(State q) { starts_.push_back(q); }
  bool accepting(State q) const { return accepting_[q]; }
  void set_accepting(State q, bool v = true) { accepting_[q] = v; }
  void add_transition(State from, Symbol a, State to) { out_[from].emplace_back(a, to); }
  const std::vector<std::pair<Symbol, State>>& out(State q) const { return out_[q]; }

  State add_state(bool accept = false) {
    out_.emplace_back();
    accepting_.push_back(accept);
    if (!names_.empty()) names_.push_back("q" + std::to_string(out_.size() - 1));
    return static_cast<State>(out_.size() - 1);
  }

  bool accepts(const Word& w) const {
    std::vector<char> cur(size(), 0);
    for (State s : starts_) cur[s] = 1;
    for (Symbol a : w) {
      std::vector<char> nxt(size(), 0);
      for (State q = 0; q < size(); ++q) {
        if (!cur[q]) continue;
        for (auto& [b, to] : out_[q]) {
          if (b == a) nxt[to] = 1;
        }
      }
      cur.swap(nxt);
    }
    for (State q = 0; q < size(); ++q) {
      if (cur[q] && accepting_[q]) return true;
    }
    return false;
  }

  std::string name(State q) const { return names_.empty() ? "q" + std::to_string(q) : names_[q]; }
  void set_names(std::vector<std::string> names) { names_ = std::move(names); }
  bool has_names() const { return !names_.empty(); }

 private:
  Alphabet alphabet_;
  std::vector<State> starts_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::pair<Symbol, State>>> out_;
  std::vector<std::string> names_;
};

namespace detail {

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* op) {
  if (!(a == b)) throw AlphabetError(std::string(op) + ": alphabet mismatch");
}

template <class Key>
struct KeyIndex {
  std::map<Key, State> ids;
  std::vector<Key> keys;
  std::pair<State, bool> intern(const Key& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) keys.push_back(k);
    return {it->second, fresh};
  }
};

}  // namespace detail

/// Builds the reachable part of a DFA described implicitly by a step function.
/// `step(key, symbol)` returns the successor key or nullopt (dead).
template <class Key, class Step, class Accept>
Dfa explore_dfa(const Alphabet& alphabet, const Key& initial, Step step, Accept accept) {
  detail::KeyIndex<Key> index;
  index.intern(initial);
  std::vector<std::vector<State>> rows;
  for (std::size_t i = 0; i < index.keys.size(); ++i) {
    std::vector<State> row(alphabet.size(), kNoState);
    for (Symbol a = 0; a < alphabet.size(); ++a) {
      std::optional<Key> nk = step(index.keys[i], a);
      if (nk) row[a] = index.intern(*nk).first;
    }
    rows.push_back(std::move(row));
  }
  Dfa d(alphabet, index.keys.size(), 0);
  for (State q = 0; q < rows.size(); ++q) {
    d.set_accepting(q, accept(index.keys[q]));
    for (Symbol a = 0; a < alphabet.size(); ++a) d.set_next(q, a, rows[q][a]);
  }
  d.complete();
  return d;
}

/// States reachable from the start.
inline std::vector<bool> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.size(), false);
  std::vector<State> stack{d.start()};
  seen[d.start()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      State t = d.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

/// States from which an accepting state is reachable.
inline std::vector<bool> coreachable_states(const Dfa& d) {
  std::vector<std::vector<State>> rev(d.size());
  for (State q = 0; q < d.size(); ++q) {
    for (Symbol a = 0; a < d.alphabet().size(); ++a) rev[d.next(q, a)].push_back(q);
  }
  std::vector<bool> live(d.size(), false);
  std::vector<State> stack;
  for (State q = 0; q < d.size(); ++q) {
    if (d.accepting(q)) {
      live[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
    }
  }
  return live;
}

inline std::vector<bool> coreachable_states(const Nfa& n) {
  std::vector<std::vector<State>> rev(n.size());
  for (State q = 0; q < n.size(); ++q) {
    for (auto& [a, t] : n.out(q)) rev[t].push_back(q);
  }
  std::vector<bool> live(n.size(), false);
  std::vector<State> stack;
  for (State q = 0; q < n.size(); ++q) {
    if (n.accepting(q)) {
      live[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
    }
  }
  return live;
}

inline Nfa to_nfa(const Dfa& d) {
  Nfa n(d.alphabet(), d.size());
  n.add_start(d.start());
  for (State q = 0; q < d.size(); ++q) {
    n.set_accepting(q, d.accepting(q));
    for (Symbol a = 0; a < d.alphabet().size(); ++a) n.add_transition(q, a, d.next(q, a));
  }
  return n;
}

/// Subset construction; the empty subset becomes the sink.
inline Dfa determinize(const Nfa& n) {
  const std::size_t k = n.alphabet().size();
  std::vector<std::vector<std::vector<State>>> by_symbol(n.size(), std::vector<std::vector<State>>());
  for (State q = 0; q < n.size(); ++q) {
    by_symbol[q].resize(k);
    for (auto& [a, t] : n.out(q)) by_symbol[q][a].push_back(t);
  }
  using Subset = std::vector<State>;
  detail::KeyIndex<Subset> index;
  Subset init(n.starts());
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  index.intern(init);
  std::vector<std::vector<State>> rows;
  std::vector<char> mark(n.size(), 0);
  for (std::size_t i = 0; i < index.keys.size(); ++i) {
    std::vector<State> row(k);
    for (Symbol a = 0; a < k; ++a) {
      Subset nxt;
      for (State q : index.keys[i]) {
        for (State t : by_symbol[q][a]) {
          if (!mark[t]) {
            mark[t] = 1;
            nxt.push_back(t);
          }
        }
      }
      for (State t : nxt) mark[t] = 0;
      std::sort(nxt.begin(), nxt.end());
      row[a] = index.intern(nxt).first;
    }
    rows.push_back(std::move(row));
  }
  Dfa d(n.alphabet(), index.keys.size(), 0);
  for (State q = 0; q < rows.size(); ++q) {
    bool acc = false;
    for (State s : index.keys[q]) acc = acc || n.accepting(s);
    d.set_accepting(q, acc);
    for (Symbol a = 0; a < k; ++a) d.set_next(q, a, rows[q][a]);
  }
  return d;
}

/// Moore partition refinement over the reachable part.
inline Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  auto reach = reachable_states(d);
  std::vector<State> live;
  std::vector<State> remap(d.size(), kNoState);
  for (State q = 0; q < d.size(); ++q) {
    if (reach[q]) {
      remap[q] = static_cast<State>(live.size());
      live.push_back(q);
    }
  }
  std::vector<State> cls(live.size());
  for (std::size_t i = 0; i < live.size(); ++i) cls[i] = d.accepting(live[i]) ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<State>, State> sig_ids;
    std::vector<State> next(live.size());
    std::vector<State> sig(k + 1);
    for (std::size_t i = 0; i < live.size(); ++i) {
      sig[0] = cls[i];
      for (Symbol a = 0; a < k; ++a) sig[a + 1] = cls[remap[d.next(live[i], a)]];
      auto [it, fresh] = sig_ids.emplace(sig, static_cast<State>(sig_ids.size()));
      next[i] = it->second;
    }
    std::size_t new_count = sig_ids.size();
    cls.swap(next);
    if (new_count == count) break;
    count = new_count;
  }
  // Renumber classes in BFS order from the start for a canonical layout.
  std::vector<State> order(count, kNoState);
  std::vector<State> rep(count, kNoState);
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (rep[cls[i]] == kNoState) rep[cls[i]] = static_cast<State>(i);
  }
  std::deque<State> queue;
  State next_id = 0;
  State c0 = cls[remap[d.start()]];
  order[c0] = next_id++;
  queue.push_back(c0);
  while (!queue.empty()) {
    State c = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < k; ++a) {
      State t = cls[remap[d.next(live[rep[c]], a)]];
      if (order[t] == kNoState) {
        order[t] = next_id++;
        queue.push_back(t);
      }
    }
  }
  Dfa m(d.alphabet(), count, 0);
  for (State c = 0; c < count; ++c) {
    State q = live[rep[c]];
    m.set_accepting(order[c], d.accepting(q));
    for (Symbol a = 0; a < k; ++a) m.set_next(order[c], a, order[cls[remap[d.next(q, a)]]]);
  }
  return m;
}

enum class BoolOp { And, Or, Diff, Xor };

inline Dfa boolean(BoolOp op, const Dfa& a, const Dfa& b) {
  detail::require_same_alphabet(a.alphabet(), b.alphabet(), "boolean");
  using Key = std::pair<State, State>;
  return explore_dfa(
      a.alphabet(), Key{a.start(), b.start()},
      [&](const Key& k, Symbol s) -> std::optional<Key> { return Key{a.next(k.first, s), b.next(k.second, s)}; },
      [&](const Key& k) {
        bool x = a.accepting(k.first), y = b.accepting(k.second);
        switch (op) {
          case BoolOp::And: return x && y;
          case BoolOp::Or: return x || y;
          case BoolOp::Diff: return x && !y;
          case BoolOp::Xor: return x != y;
        }
        return false;
      });
}

inline Dfa intersect(const Dfa& a, const Dfa& b) { return boolean(BoolOp::And, a, b); }
inline Dfa unite(const Dfa& a, const Dfa& b) { return boolean(BoolOp::Or, a, b); }
inline Dfa difference(const Dfa& a, const Dfa& b) { return boolean(BoolOp::Diff, a, b); }

inline Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (State q = 0; q < c.size(); ++q) c.set_accepting(q, !d.accepting(q));
  return c;
}

/// Shortest accepted word, ties broken lexicographically in alphabet order;
/// nullopt iff the language is empty.
inline std::optional<Word> shortest_word(const Dfa& d) {
  std::vector<State> parent(d.size(), kNoState);
  std::vector<Symbol> via(d.size(), 0);
  std::vector<bool> seen(d.size(), false);
  std::deque<State> queue{d.start()};
  seen[d.start()] = true;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (d.accepting(q)) {
      Word w;
      for (State s = q; parent[s] != kNoState; s = parent[s]) w.push_back(via[s]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      State t = d.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = q;
        via[t] = a;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

/// Empty-language test with witness: returns nullopt iff empty, else a
/// shortest (then lexicographically least) accepted word.
inline std::optional<Word> is_empty(const Dfa& d) { return shortest_word(d); }

inline bool empty_language(const Dfa& d) { return !shortest_word(d).has_value(); }

struct Equivalence {
  bool equal = true;
  std::optional<Word> counterexample;
};

inline Equivalence equivalent(const Dfa& a, const Dfa& b) {
  detail::require_same_alphabet(a.alphabet(), b.alphabet(), "equivalent");
  auto w = shortest_word(boolean(BoolOp::Xor, a, b));
  if (!w) return {true, std::nullopt};
  return {false, std::move(w)};
}

/// L(a) subset of L(b).
inline bool included(const Dfa& a, const Dfa& b) { return empty_language(difference(a, b)); }

/// Accepts exactly the prefixes of accepted words.
inline Nfa prefix_closure(const Nfa& n) {
  Nfa p = n;
  auto live = coreachable_states(n);
  for (State q = 0; q < n.size(); ++q) p.set_accepting(q, live[q]);
  return p;
}

/// Accepts z iff z·s is accepted.
inline Nfa right_quotient_symbol(const Nfa& n, Symbol s) {
  Nfa p = n;
  for (State q = 0; q < n.size(); ++q) {
    bool acc = false;
    for (auto& [a, t] : n.out(q)) acc = acc || (a == s && n.accepting(t));
    p.set_accepting(q, acc);
  }
  return p;
}

/// Universal language over `alphabet`.
inline Dfa universal(const Alphabet& alphabet) {
  Dfa d(alphabet, 1, 0);
  d.set_accepting(0);
  for (Symbol a = 0; a < alphabet.size(); ++a) d.set_next(0, a, 0);
  return d;
}

inline Dfa empty_dfa(const Alphabet& alphabet) { return complement(universal(alphabet)); }

/// Words of length at most `n`.
inline Dfa length_at_most(const Alphabet& alphabet, std::size_t n) {
  return explore_dfa(
      alphabet, std::size_t{0},
      [&](std::size_t k, Symbol) -> std::optional<std::size_t> {
        if (k >= n) return std::nullopt;
        return k + 1;
      },
      [](std::size_t) { return true; });
}

/// The single word `w`.
inline Dfa singleton(const Alphabet& alphabet, const Word& w) {
  return explore_dfa(
      alphabet, std::size_t{0},
      [&](std::size_t k, Symbol a) -> std::optional<std::size_t> {
        if (k < w.size() && w[k] == a) return k + 1;
        return std::nullopt;
      },
      [&](std::size_t k) { return k == w.size(); });
}

/// Well-formed convolutions: no track resumes after PAD. With the all-PAD
/// symbol present, once it is read only all-PAD may follow.
inline Dfa well_formed_dfa(const Alphabet& conv) {
  if (!conv.is_convolution()) return universal(conv);
  using Key = std::uint32_t;  // bitmask of finished tracks
  const std::uint32_t full = (1u << conv.arity()) - 1;
  return explore_dfa(
      conv, Key{0},
      [&](Key ended, Symbol s) -> std::optional<Key> {
        Key next = ended;
        for (std::size_t i = 0; i < conv.arity(); ++i) {
          if (conv.component(s, i) == kPad) {
            next |= 1u << i;
          } else if (ended & (1u << i)) {
            return std::nullopt;
          }
        }
        (void)full;
        return next;
      },
      [](Key) { return true; });
}

/// Lifts `d` (over a convolution alphabet of arity k, or a plain alphabet
/// read as arity 1) onto the convolution alphabet `target`, reading its
/// track i from target track `track_map[i]`. Positions where every mapped
/// track is PAD are trailing padding for `d`: after the first one only
/// such positions may follow. Other tracks are unconstrained.
inline Dfa cylindrify(const Dfa& d, const Alphabet& target, const std::vector<std::size_t>& track_map) {
  const Alphabet& src = d.alphabet();
  // A source whose alphabet is exactly one target track is read as that
  // single track, even when the track is itself a convolution.
  const bool src_plain =
      !src.is_convolution() || (track_map.size() == 1 && track_map[0] < target.arity() && target.track(track_map[0]) == src);
  const std::size_t k = src_plain ? 1 : src.arity();
  if (track_map.size() != k) throw AlphabetError("cylindrify: track map arity mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (track_map[i] >= target.arity()) throw AlphabetError("cylindrify: track index out of range");
    const Alphabet& want = src_plain ? src : src.track(i);
    if (!(target.track(track_map[i]) == want)) throw AlphabetError("cylindrify: track alphabet mismatch");
  }
  // Precompute the projected source symbol per target symbol (kNoState = all PAD).
  std::vector<Symbol> proj(target.size());
  std::vector<bool> all_pad(target.size());
  std::vector<int> comps(k);
  for (Symbol s = 0; s < target.size(); ++s) {
    bool pad = true;
    for (std::size_t i = 0; i < k; ++i) {
      comps[i] = target.component(s, track_map[i]);
      pad = pad && comps[i] == kPad;
    }
    all_pad[s] = pad;
    if (pad) {
      if (!src_plain && src.has_all_pad()) {
        proj[s] = *src.all_pad_symbol();
        all_pad[s] = false;
      }
      continue;
    }
    if (src_plain) {
      proj[s] = static_cast<Symbol>(comps[0]);
    } else {
      proj[s] = *src.symbol_of(comps);
    }
  }
  using Key = std::pair<State, bool>;  // (state, finished)
  return explore_dfa(
      target, Key{d.start(), false},
      [&](const Key& key, Symbol s) -> std::optional<Key> {
        if (all_pad[s]) return Key{key.first, true};
        if (key.second) return std::nullopt;
        return Key{d.next(key.first, proj[s]), false};
      },
      [&](const Key& key) { return d.accepting(key.first); });
}

/// Existential projection onto the kept tracks. With one kept track the
/// result is over that track's alphabet; otherwise over the convolution of
/// the kept tracks. Positions where all kept tracks are PAD may only trail,
/// so they are folded into acceptance.
inline Nfa project(const Dfa& d, const std::vector<std::size_t>& keep) {
  const Alphabet& src = d.alphabet();
  if (!src.is_convolution()) throw AlphabetError("project: not a convolution alphabet");
  if (keep.empty()) throw AlphabetError("project: empty track set");
  for (std::size_t t : keep) {
    if (t >= src.arity()) throw AlphabetError("project: track index out of range");
  }
  Dfa wf = minimize(intersect(d, well_formed_dfa(src)));
  std::vector<Alphabet> kept_tracks;
  for (std::size_t t : keep) kept_tracks.push_back(src.track(t));
  const bool single = keep.size() == 1;
  Alphabet dst = single ? kept_tracks[0] : Alphabet::convolution(kept_tracks, src.has_all_pad());

  std::vector<std::optional<Symbol>> relabel(src.size());
  std::vector<int> comps(keep.size());
  for (Symbol s = 0; s < src.size(); ++s) {
    bool pad = true;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      comps[i] = src.component(s, keep[i]);
      pad = pad && comps[i] == kPad;
    }
    if (pad) {
      if (!single && dst.has_all_pad()) relabel[s] = dst.all_pad_symbol();
      continue;
    }
    relabel[s] = single ? static_cast<Symbol>(comps[0]) : *dst.symbol_of(comps);
  }
  // Acceptance closure over trailing all-PAD (kept) positions.
  std::vector<bool> acc(wf.size(), false);
  for (State q = 0; q < wf.size(); ++q) acc[q] = wf.accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < wf.size(); ++q) {
      if (acc[q]) continue;
      for (Symbol s = 0; s < src.size(); ++s) {
        if (!relabel[s] && acc[wf.next(q, s)]) {
          acc[q] = true;
          changed = true;
          break;
        }
      }
    }
  }
  Nfa n(dst, wf.size());
  n.add_start(wf.start());
  for (State q = 0; q < wf.size(); ++q) {
    n.set_accepting(q, acc[q]);
    std::set<std::pair<Symbol, State>> seen;
    for (Symbol s = 0; s < src.size(); ++s) {
      if (!relabel[s]) continue;
      if (seen.emplace(*relabel[s], wf.next(q, s)).second) n.add_transition(q, *relabel[s], wf.next(q, s));
    }
  }
  return n;
}

/// Fixes track `track` of a convolution DFA to the word `w` (PAD beyond its
/// end). The result reads the remaining tracks: the plain track alphabet
/// when one track remains, else their convolution.
inline Dfa specialize(const Dfa& d, std::size_t track, const Word& w) {
  const Alphabet& src = d.alphabet();
  if (!src.is_convolution() || track >= src.arity()) throw AlphabetError("specialize: bad track");
  for (Symbol s : w) {
    if (s >= src.track(track).size()) throw AlphabetError("specialize: symbol outside track alphabet");
  }
  std::vector<std::size_t> rest;
  std::vector<Alphabet> rest_tracks;
  for (std::size_t i = 0; i < src.arity(); ++i) {
    if (i != track) {
      rest.push_back(i);
      rest_tracks.push_back(src.track(i));
    }
  }
  if (rest.empty()) throw AlphabetError("specialize: no remaining tracks");
  const bool single = rest.size() == 1;
  Alphabet dst = single ? rest_tracks[0] : Alphabet::convolution(rest_tracks);

  auto full_symbol = [&](int fixed, Symbol s_rest) -> std::optional<Symbol> {
    std::vector<int> comps(src.arity(), kPad);
    comps[track] = fixed;
    if (single) {
      comps[rest[0]] = static_cast<int>(s_rest);
    } else {
      for (std::size_t i = 0; i < rest.size(); ++i) comps[rest[i]] = dst.component(s_rest, i);
    }
    return src.symbol_of(comps);
  };
  auto pad_rest = [&](int fixed) -> std::optional<Symbol> {
    std::vector<int> comps(src.arity(), kPad);
    comps[track] = fixed;
    return src.symbol_of(comps);
  };
  // Acceptance at (q, i): feeding the rest of w with PAD elsewhere accepts.
  auto finish_accepts = [&](State q, std::size_t i) {
    for (; i < w.size(); ++i) {
      auto s = pad_rest(static_cast<int>(w[i]));
      if (!s) return false;
      q = d.next(q, *s);
    }
    return d.accepting(q);
  };
  using Key = std::pair<State, std::size_t>;
  return explore_dfa(
      dst, Key{d.start(), 0},
      [&](const Key& k, Symbol a) -> std::optional<Key> {
        int fixed = k.second < w.size() ? static_cast<int>(w[k.second]) : kPad;
        auto s = full_symbol(fixed, a);
        if (!s) return std::nullopt;
        return Key{d.next(k.first, *s), std::min(k.second + 1, w.size())};
      },
      [&](const Key& k) { return finish_accepts(k.first, k.second); });
}

/// Copies `d` onto an alphabet containing a token-identical subset of
/// symbols; symbols of `d` missing from `target` are dropped.
inline Dfa restrict_alphabet(const Dfa& d, const Alphabet& target) {
  std::vector<std::optional<Symbol>> src_of(target.size());
  for (Symbol s = 0; s < target.size(); ++s) src_of[s] = d.alphabet().find(target.token(s));
  return explore_dfa(
      target, d.start(),
      [&](State q, Symbol s) -> std::optional<State> {
        if (!src_of[s]) return std::nullopt;
        return d.next(q, *src_of[s]);
      },
      [&](State q) { return d.accepting(q); });
}

/// Renames symbols through token identity onto an alphabet with the same token set.
inline Dfa relabel_by_token(const Dfa& d, const Alphabet& target) {
  if (target.size() != d.alphabet().size()) throw AlphabetError("relabel: alphabet sizes differ");
  return restrict_alphabet(d, target);
}

/// Enumerates all words of length <= maxlen in length-lex order.
inline void for_each_word(std::size_t alphabet_size, std::size_t maxlen, const std::function<void(const Word&)>& f) {
  Word w;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    w.assign(len, 0);
    for (;;) {
      f(w);
      std::size_t i = len;
      while (i > 0) {
        if (++w[i - 1] < alphabet_size) break;
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
}

/// Accepted words of exactly `len` symbols in lexicographic order.
inline std::vector<Word> words_of_length(const Dfa& d, std::size_t len, std::size_t limit = SIZE_MAX) {
  auto live = coreachable_states(d);
  // dist[q] feasibility: can reach acceptance in exactly r steps, computed per r.
  std::vector<std::vector<char>> can(len + 1, std::vector<char>(d.size(), 0));
  for (State q = 0; q < d.size(); ++q) can[0][q] = d.accepting(q);
  for (std::size_t r = 1; r <= len; ++r) {
    for (State q = 0; q < d.size(); ++q) {
      if (!live[q]) continue;
      for (Symbol a = 0; a < d.alphabet().size(); ++a) {
        if (can[r - 1][d.next(q, a)]) {
          can[r][q] = 1;
          break;
        }
      }
    }
  }
  std::vector<Word> out;
  if (!can[len][d.start()]) return out;
  Word w;
  std::function<void(State)> rec = [&](State q) {
    if (out.size() >= limit) return;
    std::size_t r = len - w.size();
    if (r == 0) {
      out.push_back(w);
      return;
    }
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      State t = d.next(q, a);
      if (can[r - 1][t]) {
        w.push_back(a);
        rec(t);
        w.pop_back();
      }
    }
  };
  rec(d.start());
  return out;
}

/// True iff the language is finite (no cycle through a useful state).
inline bool is_finite(const Dfa& d) {
  auto reach = reachable_states(d);
  auto live = coreachable_states(d);
  std::vector<int> color(d.size(), 0);
  std::function<bool(State)> has_cycle = [&](State q) {
    color[q] = 1;
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      State t = d.next(q, a);
      if (!live[t]) continue;
      if (color[t] == 1) return true;
      if (color[t] == 0 && has_cycle(t)) return true;
    }
    color[q] = 2;
    return false;
  };
  if (!reach[d.start()] || !live[d.start()]) return true;
  return !has_cycle(d.start());
}

}  // namespace autolin
