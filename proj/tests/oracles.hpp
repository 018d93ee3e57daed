#pragma once

// Brute-force reference implementations used to cross-check the library.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "autolin/families.hpp"

namespace oracle {

using namespace autolin;
using Rng = std::mt19937_64;

/// All words over k symbols up to maxlen, in length-lex order.
inline std::vector<Word> all_words(std::size_t k, std::size_t maxlen) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(static_cast<Symbol>(a));
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

inline Dfa random_dfa(const Alphabet& a, std::size_t n, Rng& rng, double accept_p = 0.4) {
  std::uniform_int_distribution<State> st(0, static_cast<State>(n - 1));
  std::bernoulli_distribution acc(accept_p);
  Dfa d(a, n, 0);
  for (State q = 0; q < n; ++q) {
    d.set_accepting(q, acc(rng));
    for (Symbol s = 0; s < a.size(); ++s) d.set_next(q, s, st(rng));
  }
  return d;
}

inline Nfa random_nfa(const Alphabet& a, std::size_t n, Rng& rng, double density = 0.3) {
  std::bernoulli_distribution edge(density), acc(0.35);
  Nfa m(a, n);
  m.add_start(0);
  if (n > 2 && edge(rng)) m.add_start(1);
  for (State q = 0; q < n; ++q) {
    m.set_accepting(q, acc(rng));
    for (Symbol s = 0; s < a.size(); ++s) {
      for (State t = 0; t < n; ++t) {
        if (edge(rng)) m.add_transition(q, s, t);
      }
    }
  }
  return m;
}

/// Subset simulation, written independently of the library.
inline bool nfa_member(const Nfa& m, const Word& w) {
  std::set<State> cur(m.starts().begin(), m.starts().end());
  for (Symbol a : w) {
    std::set<State> nxt;
    for (State q : cur) {
      for (auto& [b, t] : m.out(q)) {
        if (b == a) nxt.insert(t);
      }
    }
    cur = std::move(nxt);
  }
  for (State q : cur) {
    if (m.accepting(q)) return true;
  }
  return false;
}

inline bool dfa_member(const Dfa& d, const Word& w) {
  State q = d.start();
  for (Symbol a : w) q = d.next(q, a);
  return d.accepting(q);
}

/// Number of Myhill–Nerode classes among reachable states, separating states
/// by their acceptance of all suffixes up to `probe` (exact when probe ≥ n−2).
inline std::size_t nerode_classes(const Dfa& d, std::size_t probe) {
  auto suffixes = all_words(d.alphabet().size(), probe);
  std::set<State> reach{d.start()};
  std::vector<State> stack{d.start()};
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      if (reach.insert(d.next(q, a)).second) stack.push_back(d.next(q, a));
    }
  }
  std::set<std::vector<bool>> sigs;
  for (State q : reach) {
    std::vector<bool> sig;
    for (auto& z : suffixes) {
      State r = q;
      for (Symbol a : z) r = d.next(r, a);
      sig.push_back(d.accepting(r));
    }
    sigs.insert(sig);
  }
  return sigs.size();
}

/// Does some y make conv(x, y) accepted? Explicit search over (state, y ended).
inline bool projection_member(const Dfa& d, const Word& x) {
  const Alphabet& c = d.alphabet();
  const std::size_t k = c.track(1).size();
  std::set<std::pair<State, bool>> cur{{d.start(), false}};
  for (Symbol a : x) {
    std::set<std::pair<State, bool>> nxt;
    for (auto [q, ended] : cur) {
      if (!ended) {
        for (std::size_t b = 0; b < k; ++b) nxt.insert({d.next(q, c.symbol({static_cast<int>(a), static_cast<int>(b)})), false});
      }
      nxt.insert({d.next(q, c.symbol({static_cast<int>(a), kPad})), true});
    }
    cur = std::move(nxt);
  }
  // After x: y may continue alone.
  std::set<State> seen;
  std::vector<State> stack;
  for (auto [q, ended] : cur) {
    if (d.accepting(q)) return true;
    if (!ended && seen.insert(q).second) stack.push_back(q);
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < k; ++b) {
      State t = d.next(q, c.symbol({kPad, static_cast<int>(b)}));
      if (d.accepting(t)) return true;
      if (seen.insert(t).second) stack.push_back(t);
    }
  }
  return false;
}

struct Violation {
  Word x, y, y2;
};

/// Two distinct outputs for one input among words up to maxlen, if any.
inline std::optional<Violation> brute_functionality(const Dfa& graph, std::size_t maxlen) {
  const Alphabet& c = graph.alphabet();
  auto xs = all_words(c.track(0).size(), maxlen);
  auto ys = all_words(c.track(1).size(), maxlen);
  for (auto& x : xs) {
    std::optional<Word> first;
    for (auto& y : ys) {
      if (x.empty() && y.empty()) {
        if (!graph.accepting(graph.start())) continue;
      } else if (!graph.accepts(convolve({x, y}, c))) {
        continue;
      }
      if (!first) {
        first = y;
      } else {
        return Violation{x, *first, y};
      }
    }
  }
  return std::nullopt;
}

/// Tell-tale oracle: indices d with |d| ≤ max_index and membership of all words
/// up to a fixed horizon, compared as bitsets in length-lex order.
class TelltaleOracle {
 public:
  TelltaleOracle(const AutomaticFamily& fam, std::size_t max_index, std::size_t horizon)
      : fam_(fam), words_(all_words(fam.word_alphabet().size(), horizon)) {
    for (auto& w : words_) {
      if (prefix_.size() <= w.size()) prefix_.resize(w.size() + 1, 0);
      prefix_[w.size()] += 1;
    }
    for (std::size_t i = 1; i < prefix_.size(); ++i) prefix_[i] += prefix_[i - 1];
    for (auto& d : all_words(fam.index_alphabet().size(), max_index)) {
      if (!well_formed_index(d) || !fam.is_index(d)) continue;
      indices_.push_back(d);
      sigs_.push_back(signature(d));
    }
  }

  std::size_t horizon() const { return prefix_.size() - 1; }
  std::size_t index_count() const { return indices_.size(); }

  /// True iff no d (|d| ≤ max_index) satisfies, on words up to b+4:
  /// L_e ∩ Σ^{≤b} ⊆ L_d ⊆ L_e and L_d ≠ L_e. Fills a witness otherwise.
  bool certified(const Word& e, std::size_t b, Word* witness = nullptr) const {
    const std::size_t hi = std::min(b + 4, horizon());
    const std::size_t n_short = prefix_[std::min(b, horizon())];
    const std::size_t n_long = prefix_[hi];
    auto se = signature(e);
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      const auto& sd = sigs_[i];
      bool ok = true, proper = false;
      for (std::size_t k = 0; k < n_long && ok; ++k) {
        if (k < n_short && se[k] && !sd[k]) ok = false;
        if (sd[k] && !se[k]) ok = false;
        if (se[k] && !sd[k]) proper = true;
      }
      if (ok && proper) {
        if (witness) *witness = indices_[i];
        return false;
      }
    }
    return true;
  }

 private:
  bool well_formed_index(const Word& d) const {
    const Alphabet& a = fam_.index_alphabet();
    if (!a.is_convolution()) return true;
    try {
      deconvolve(d, a);
      return true;
    } catch (const AlphabetError&) {
      return false;
    }
  }
  std::vector<bool> signature(const Word& e) const {
    std::vector<bool> s;
    s.reserve(words_.size());
    const Dfa& m = fam_.member_dfa();
    for (auto& x : words_) s.push_back(!(e.empty() && x.empty()) ? m.accepts(convolve({e, x}, m.alphabet())) : m.accepting(m.start()));
    return s;
  }

  const AutomaticFamily& fam_;
  std::vector<Word> words_;
  std::vector<std::size_t> prefix_;  // number of words of length ≤ i
  std::vector<Word> indices_;
  std::vector<std::vector<bool>> sigs_;
};

/// Outcome of comparing the level sets with the oracle for one family.
struct TelltaleCrossCheck {
  std::size_t agreements = 0;
  std::size_t horizon_reports = 0;   // disagreements explained by the oracle's horizon
  std::vector<std::string> errors;   // disagreements that exact checks do not explain
};

inline TelltaleCrossCheck cross_check_telltale(const AutomaticFamily& fam, std::size_t index_len, std::size_t b_max,
                                               std::size_t max_index = 6) {
  TelltaleCrossCheck r;
  TelltaleOracle o(fam, max_index, b_max + 4);
  auto t = family_detail::triple(fam);
  for (std::size_t b = 0; b <= b_max; ++b) {
    Dfa bl = family_detail::blockers(fam, t, b);
    Dfa level = minimize(difference(fam.index_dfa(), determinize(project(bl, {0}))));
    for (std::size_t len = 0; len <= index_len; ++len) {
      for (auto& e : words_of_length(fam.index_dfa(), len)) {
        Word w;
        bool lib = level.accepts(e);
        bool ora = o.certified(e, b, &w);
        if (lib == ora) {
          ++r.agreements;
          continue;
        }
        std::string where = "index of length " + std::to_string(e.size()) + " at b=" + std::to_string(b);
        if (!lib) {
          auto d = shortest_word(specialize(bl, 0, e));
          if (d && verify_blocker(fam, e, *d, b)) {
            ++r.horizon_reports;
          } else {
            r.errors.push_back(where + ": level set rejects without a verified blocker");
          }
        } else if (!verify_blocker(fam, e, w, b)) {
          ++r.horizon_reports;
        } else {
          r.errors.push_back(where + ": oracle blocker verified exactly but level set accepts");
        }
      }
    }
  }
  return r;
}

}  // namespace oracle
