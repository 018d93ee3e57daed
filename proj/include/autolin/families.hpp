#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autolin/automata.hpp"

namespace autolin {

struct FamilyError : Error {
  using Error::Error;
};

/// Indexed family {L_e : e ∈ I}: a DFA for I and a DFA for {conv(e, x) : x ∈ L_e}.
class AutomaticFamily {
 public:
  AutomaticFamily(Dfa index_dfa, Dfa member_dfa) : index_(std::move(index_dfa)), member_(std::move(member_dfa)) {
    const Alphabet& c = member_.alphabet();
    if (!c.is_convolution() || c.arity() != 2 || c.has_all_pad()) {
      throw FamilyError("member DFA must be over a two-track convolution alphabet");
    }
    if (!(c.track(0) == index_.alphabet())) throw FamilyError("member DFA index track differs from the index alphabet");
  }

  const Dfa& index_dfa() const { return index_; }
  const Dfa& member_dfa() const { return member_; }
  const Alphabet& index_alphabet() const { return index_.alphabet(); }
  const Alphabet& word_alphabet() const { return member_.alphabet().track(1); }
  const Alphabet& pair_alphabet() const { return member_.alphabet(); }

  bool is_index(const Word& e) const { return index_.accepts(e); }
  bool member(const Word& e, const Word& x) const {
    return is_index(e) && member_.accepts(convolve({e, x}, member_.alphabet()));
  }

 private:
  Dfa index_;
  Dfa member_;
};

inline Dfa language_of(const AutomaticFamily& fam, const Word& e) {
  if (!fam.is_index(e)) throw FamilyError("'" + fam.index_alphabet().format(e, " ") + "' is not an index");
  return minimize(specialize(fam.member_dfa(), 0, e));
}

inline bool index_equivalent(const AutomaticFamily& fam, const Word& e, const Word& e2) {
  return equivalent(language_of(fam, e), language_of(fam, e2)).equal;
}

struct NonemptyReport {
  bool pass = true;
  std::optional<Word> empty_index;    // some e ∈ I with L_e = ∅
  std::optional<Word> stray_index;    // some e ∉ I used by the member DFA
};

inline NonemptyReport validate_nonempty(const AutomaticFamily& fam) {
  NonemptyReport r;
  Dfa used = minimize(determinize(project(fam.member_dfa(), {0})));
  r.empty_index = shortest_word(difference(fam.index_dfa(), used));
  r.stray_index = shortest_word(difference(used, fam.index_dfa()));
  r.pass = !r.empty_index;
  return r;
}

/// {d ∈ I : L_d ⊆ L_e}.
inline Dfa subset_index_set(const AutomaticFamily& fam, const Word& e) {
  Dfa le = language_of(fam, e);
  const Alphabet& pair = fam.pair_alphabet();
  Dfa outside = intersect(fam.member_dfa(), cylindrify(complement(le), pair, {1}));
  Dfa bad = determinize(project(outside, {0}));
  return minimize(difference(fam.index_dfa(), bad));
}

namespace family_detail {

/// Tracks (e, d, x) for the tell-tale constructions.
struct Triple {
  Alphabet conv;
  Dfa wf;
  Dfa m_ex;  // x ∈ L_e
  Dfa m_dx;  // x ∈ L_d
  Dfa not_sub;  // L_d ⊄ L_e, over (e, d)
  Dfa neq;      // L_e ⊄ L_d, over (e, d)
  Dfa pair_wf;
  Dfa pair_index;  // e ∈ I ∧ d ∈ I
};

inline Triple triple(const AutomaticFamily& fam) {
  const Alphabet& ia = fam.index_alphabet();
  Alphabet conv = Alphabet::convolution({ia, ia, fam.word_alphabet()});
  Dfa wf = well_formed_dfa(conv);
  Dfa m_ex = cylindrify(fam.member_dfa(), conv, {0, 2});
  Dfa m_dx = cylindrify(fam.member_dfa(), conv, {1, 2});
  Alphabet pair = Alphabet::convolution({ia, ia});
  Dfa not_sub = minimize(determinize(project(intersect(intersect(m_dx, complement(m_ex)), wf), {0, 1})));
  Dfa neq = minimize(determinize(project(intersect(intersect(m_ex, complement(m_dx)), wf), {0, 1})));
  Dfa pair_wf = well_formed_dfa(pair);
  Dfa pair_index = intersect(cylindrify(fam.index_dfa(), pair, {0}), cylindrify(fam.index_dfa(), pair, {1}));
  return {conv, wf, m_ex, m_dx, not_sub, neq, pair_wf, minimize(intersect(pair_index, pair_wf))};
}

/// conv(e, d) with d a blocker for e at level b.
inline Dfa blockers(const AutomaticFamily& fam, const Triple& t, std::size_t b) {
  Dfa short_x = cylindrify(length_at_most(fam.word_alphabet(), b), t.conv, {2});
  Dfa missed = intersect(intersect(intersect(short_x, t.m_ex), complement(t.m_dx)), t.wf);
  Dfa bad1 = minimize(determinize(project(missed, {0, 1})));
  Dfa ok = intersect(t.pair_index, complement(bad1));
  ok = intersect(ok, complement(t.not_sub));
  ok = intersect(ok, t.neq);
  return minimize(ok);
}

}  // namespace family_detail

/// {e ∈ I : no d ∈ I has (L_e ∩ Σ^{≤b}) ⊆ L_d ⊊ L_e}.
inline Dfa telltale_level_set(const AutomaticFamily& fam, std::size_t b) {
  auto t = family_detail::triple(fam);
  Dfa blocked = determinize(project(family_detail::blockers(fam, t, b), {0}));
  return minimize(difference(fam.index_dfa(), blocked));
}

struct TelltaleEntry {
  Word index;
  std::optional<std::size_t> level;  // least certified b
  std::optional<Word> blocker;       // witness d at b_max when uncertified
  bool blocker_checked = false;      // D ⊆ L_d ⊊ L_e re-verified
};

struct TelltaleReport {
  std::size_t index_len = 0;
  std::size_t b_max = 0;
  std::vector<TelltaleEntry> entries;
  bool all_certified() const {
    for (auto& e : entries) {
      if (!e.level) return false;
    }
    return true;
  }
};

/// Checks D ⊆ L_d ⊊ L_e for D = L_e ∩ Σ^{≤b}.
inline bool verify_blocker(const AutomaticFamily& fam, const Word& e, const Word& d, std::size_t b) {
  if (!fam.is_index(d)) return false;
  Dfa le = language_of(fam, e);
  Dfa ld = language_of(fam, d);
  Dfa slice = intersect(le, length_at_most(fam.word_alphabet(), b));
  return included(slice, ld) && included(ld, le) && !equivalent(ld, le).equal;
}

/// Smallest certified tell-tale level per index up to `index_len`; a bounded
/// semi-decision, since no bound on tell-tale size is known in general.
inline TelltaleReport learnability_scan(const AutomaticFamily& fam, std::size_t index_len, std::size_t b_max) {
  TelltaleReport rep;
  rep.index_len = index_len;
  rep.b_max = b_max;
  auto t = family_detail::triple(fam);
  std::vector<Dfa> blocker_sets;
  std::vector<Dfa> levels;
  for (std::size_t b = 0; b <= b_max; ++b) {
    blocker_sets.push_back(family_detail::blockers(fam, t, b));
    levels.push_back(minimize(difference(fam.index_dfa(), determinize(project(blocker_sets.back(), {0})))));
  }
  for (std::size_t len = 0; len <= index_len; ++len) {
    for (auto& e : words_of_length(fam.index_dfa(), len)) {
      TelltaleEntry entry{e, std::nullopt, std::nullopt, false};
      for (std::size_t b = 0; b <= b_max; ++b) {
        if (levels[b].accepts(e)) {
          entry.level = b;
          break;
        }
      }
      if (!entry.level) {
        entry.blocker = shortest_word(specialize(blocker_sets.back(), 0, e));
        if (entry.blocker) entry.blocker_checked = verify_blocker(fam, e, *entry.blocker, b_max);
      }
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

}  // namespace autolin
