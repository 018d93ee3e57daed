#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "autolin/autofn.hpp"
#include "autolin/families.hpp"

namespace autolin {

struct LearningError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Texts

enum class TextKind { Canonical, Fat, Scripted, Shuffled };

inline const char* to_string(TextKind k) {
  switch (k) {
    case TextKind::Canonical: return "canonical";
    case TextKind::Fat: return "fat";
    case TextKind::Scripted: return "scripted";
    case TextKind::Shuffled: return "shuffled";
  }
  return "?";
}

inline std::optional<TextKind> text_kind_from_string(const std::string& s) {
  if (s == "canonical") return TextKind::Canonical;
  if (s == "fat") return TextKind::Fat;
  if (s == "scripted") return TextKind::Scripted;
  if (s == "shuffled") return TextKind::Shuffled;
  return std::nullopt;
}

/// Length-lex enumeration of a regular language, produced lazily.
class LengthLexEnumerator {
 public:
  explicit LengthLexEnumerator(Dfa d) : dfa_(minimize(std::move(d))), finite_(is_finite(dfa_)) {}

  bool finite() const { return finite_; }

  /// i-th word, or nullopt past the end of a finite language.
  std::optional<Word> at(std::size_t i) {
    while (words_.size() <= i) {
      if (finite_ && next_len_ > dfa_.size()) return std::nullopt;
      for (auto& w : words_of_length(dfa_, next_len_)) words_.push_back(std::move(w));
      ++next_len_;
    }
    return words_[i];
  }

  std::size_t size_if_finite() {
    if (!finite_) throw LearningError("language is infinite");
    at(SIZE_MAX - 1);
    return words_.size();
  }

 private:
  Dfa dfa_;
  bool finite_;
  std::vector<Word> words_;
  std::size_t next_len_ = 0;
};

/// An infinite sequence of words of one language.
class Text {
 public:
  Text(TextKind kind, const Dfa& language, std::uint64_t seed = 0, std::vector<Word> script = {},
       std::size_t slice_len = 4)
      : kind_(kind), seed_(seed), enumerator_(std::make_shared<LengthLexEnumerator>(language)), rng_(seed) {
    if (empty_language(language)) throw LearningError("a text needs a nonempty language");
    for (auto& w : script) {
      if (!language.accepts(w)) throw LearningError("scripted word is outside the language");
    }
    script_ = std::move(script);
    if (kind_ == TextKind::Shuffled) {
      Dfa slice = intersect(language, length_at_most(language.alphabet(), slice_len));
      if (empty_language(slice)) slice = language;
      LengthLexEnumerator e(slice);
      if (!e.finite()) throw LearningError("shuffled texts need a finite slice");
      for (std::size_t i = 0; auto w = e.at(i); ++i) slice_.push_back(*w);
    }
  }

  TextKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  Word next() {
    switch (kind_) {
      case TextKind::Canonical: return canonical(pos_++);
      case TextKind::Fat: {
        if (round_pos_ >= round_len_) {
          ++round_len_;
          if (enumerator_->finite()) round_len_ = std::min(round_len_, enumerator_->size_if_finite());
          round_pos_ = 0;
        }
        return *enumerator_->at(round_pos_++);
      }
      case TextKind::Scripted: {
        if (pos_ < script_.size()) return script_[pos_++];
        // Canonical order without repeating scripted words; finite languages cycle.
        for (;;) {
          auto w = enumerator_->at(tail_++);
          if (!w) {
            tail_ = 0;
            script_.clear();
            continue;
          }
          if (std::find(script_.begin(), script_.end(), *w) == script_.end()) return *w;
        }
      }
      case TextKind::Shuffled: {
        if (pos_ % slice_.size() == 0) std::shuffle(slice_.begin(), slice_.end(), rng_);
        return slice_[pos_++ % slice_.size()];
      }
    }
    throw LearningError("unknown text kind");
  }

 private:
  Word canonical(std::size_t i) {
    if (enumerator_->finite()) i %= enumerator_->size_if_finite();
    return *enumerator_->at(i);
  }

  TextKind kind_;
  std::uint64_t seed_;
  std::shared_ptr<LengthLexEnumerator> enumerator_;
  std::mt19937_64 rng_;
  std::vector<Word> script_;
  std::vector<Word> slice_;
  std::size_t pos_ = 0;
  std::size_t tail_ = 0;
  std::size_t round_len_ = 0;
  std::size_t round_pos_ = 0;
};

inline Text make_text(TextKind kind, const Dfa& language, std::uint64_t seed = 0, std::vector<Word> script = {}) {
  return Text(kind, language, seed, std::move(script));
}

// ---------------------------------------------------------------------------
// Storage devices. Cells hold datum symbols or the separator; every
// single-cell operation (read, write, move, push, pop, enqueue, dequeue)
// costs one step.

inline constexpr int kSeparator = -1;

class Device {
 public:
  virtual ~Device() = default;
  virtual const char* kind() const = 0;
  std::size_t cycle_steps() const { return cycle_steps_; }
  std::size_t total_steps() const { return total_steps_; }
  void start_cycle() { cycle_steps_ = 0; }
  virtual std::size_t size() const = 0;
  virtual bool empty() const = 0;

 protected:
  void tick(std::size_t n = 1) {
    cycle_steps_ += n;
    total_steps_ += n;
  }

 private:
  std::size_t cycle_steps_ = 0;
  std::size_t total_steps_ = 0;
};

/// One-sided tape; the head starts at the origin and the written part is
/// kept contiguous. Words are stored as w#.
class TapeDevice : public Device {
 public:
  const char* kind() const override { return "tape"; }
  std::size_t size() const override { return cells_.size(); }
  bool empty() const override { return cells_.empty(); }
  std::size_t head() const { return head_; }

  /// Writes w# at the end of the written part; the head is kept there.
  void append_word(const Word& w) {
    // The head is parked at the end by every operation below, so no seek is needed.
    for (Symbol s : w) write_advance(static_cast<int>(s));
    write_advance(kSeparator);
  }

  /// Reads the last word while scrolling back over it and erases it;
  /// nullopt (one step to see the origin) if the tape is empty.
  std::optional<Word> pop_last_word() {
    if (cells_.empty()) {
      tick();
      return std::nullopt;
    }
    // Step onto the trailing separator and erase it.
    move_left_erase();
    Word w;
    while (head_ > 0 && cells_[head_ - 1] != kSeparator) {
      w.push_back(static_cast<Symbol>(cells_[head_ - 1]));
      move_left_erase();
    }
    tick();  // seeing the previous separator or the origin
    std::reverse(w.begin(), w.end());
    return w;
  }

  std::vector<int> contents() const { return cells_; }

 private:
  void write_advance(int s) {
    cells_.push_back(s);
    ++head_;
    tick();
  }
  void move_left_erase() {
    cells_.pop_back();
    --head_;
    tick();
  }

  std::vector<int> cells_;
  std::size_t head_ = 0;
};

class StackDevice : public Device {
 public:
  const char* kind() const override { return "stack"; }
  std::size_t size() const override { return cells_.size(); }
  bool empty() const override { return cells_.empty(); }

  void push_word(const Word& w) {
    for (Symbol s : w) push(static_cast<int>(s));
    push(kSeparator);
  }
  std::optional<Word> pop_word() {
    tick();  // look at the top
    if (cells_.empty()) return std::nullopt;
    cells_.pop_back();  // the separator
    Word w;
    for (;;) {
      tick();
      if (cells_.empty() || cells_.back() == kSeparator) break;
      w.push_back(static_cast<Symbol>(cells_.back()));
      cells_.pop_back();
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
  std::vector<int> contents() const { return cells_; }

 private:
  void push(int s) {
    cells_.push_back(s);
    tick();
  }
  std::vector<int> cells_;
};

class QueueDevice : public Device {
 public:
  const char* kind() const override { return "queue"; }
  std::size_t size() const override { return cells_.size() - read_; }
  bool empty() const override { return size() == 0; }

  void enqueue_word(const Word& w) {
    for (Symbol s : w) enqueue(static_cast<int>(s));
    enqueue(kSeparator);
  }
  std::optional<Word> dequeue_word() {
    if (empty()) {
      tick();
      return std::nullopt;
    }
    Word w;
    for (;;) {
      int s = cells_[read_++];
      tick();
      if (s == kSeparator) break;
      w.push_back(static_cast<Symbol>(s));
    }
    if (read_ > 4096 && read_ * 2 > cells_.size()) {
      cells_.erase(cells_.begin(), cells_.begin() + static_cast<std::ptrdiff_t>(read_));
      read_ = 0;
    }
    return w;
  }
  std::vector<int> contents() const { return {cells_.begin() + static_cast<std::ptrdiff_t>(read_), cells_.end()}; }

 private:
  void enqueue(int s) {
    cells_.push_back(s);
    tick();
  }
  std::vector<int> cells_;
  std::size_t read_ = 0;
};

// ---------------------------------------------------------------------------
// Learners

/// Learner whose update (memory, datum) ↦ (memory, hypothesis) is an
/// automatic function over conv(conv(Mem, Dat), conv(Mem, Hyp)).
struct AutomaticLearner {
  std::string name;
  AutomaticFunction update;
  Alphabet memory_alphabet;
  Alphabet datum_alphabet;
  Alphabet hypothesis_alphabet;
  Word initial_memory;
  std::size_t memory_slack = 0;

  /// One update; nullopt when the update function is undefined there.
  std::optional<std::pair<Word, Word>> apply(const Word& memory, const Word& datum) const {
    const Alphabet& in = update.input_alphabet();
    for (Symbol s : datum) {
      if (s >= datum_alphabet.size()) return std::nullopt;
    }
    auto y = evaluate(update, convolve({memory, datum}, in));
    if (!y) return std::nullopt;
    auto parts = deconvolve(*y, update.output_alphabet());
    return std::pair<Word, Word>{parts[0], parts[1]};
  }
};

/// Everything recorded about one learning cycle.
struct CycleRecord {
  Word datum;
  Word hypothesis;
  std::size_t longest = 0;                       // n: longest datum so far
  std::vector<Word> scratch;                     // tracks of the base-tape record
  std::vector<std::pair<std::string, std::size_t>> device_steps;
  std::vector<Word> fed;                         // data handed to the simulated learner
  bool fault = false;                            // update undefined

  std::size_t scratch_length() const {
    std::size_t m = 0;
    for (auto& w : scratch) m = std::max(m, w.size());
    return m;
  }
  std::size_t total_steps() const {
    std::size_t s = 0;
    for (auto& [k, v] : device_steps) s += v;
    return s;
  }
  bool within(std::size_t rate, std::size_t slack) const {
    return !fault && total_steps() <= rate * (longest + 1) && scratch_length() <= longest + slack;
  }
};

/// A learner driven one datum per cycle.
class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual const Alphabet& hypothesis_alphabet() const = 0;
  virtual void reset() = 0;
  /// Processes one datum; fills hypothesis, scratch, device steps and fed data.
  virtual void cycle(const Word& datum, CycleRecord& rec) = 0;
  std::size_t default_rate = 8;
  std::size_t default_slack = 2;
};

/// The bare automatic learner: Tape 0 holds conv(datum, memory, hypothesis).
class AutomaticLearnerRunner : public Learner {
 public:
  explicit AutomaticLearnerRunner(std::shared_ptr<const AutomaticLearner> m) : m_(std::move(m)) {
    default_rate = 1;
    default_slack = m_->memory_slack;
    reset();
  }
  std::string name() const override { return m_->name; }
  const Alphabet& hypothesis_alphabet() const override { return m_->hypothesis_alphabet; }
  void reset() override {
    memory_ = m_->initial_memory;
    hypothesis_.clear();
  }
  void cycle(const Word& datum, CycleRecord& rec) override {
    rec.fed.push_back(datum);
    auto r = m_->apply(memory_, datum);
    if (!r) {
      rec.fault = true;
    } else {
      memory_ = r->first;
      hypothesis_ = r->second;
    }
    rec.hypothesis = hypothesis_;
    rec.scratch = {datum, memory_, hypothesis_};
  }
  const Word& memory() const { return memory_; }

 private:
  std::shared_ptr<const AutomaticLearner> m_;
  Word memory_;
  Word hypothesis_;
};

struct SessionReport {
  std::string learner;
  std::string text_kind;
  std::uint64_t seed = 0;
  std::size_t rate = 0;
  std::size_t slack = 0;
  std::vector<CycleRecord> cycles;
  std::size_t last_change = 0;  // cycle index of the last hypothesis change
  Word final_hypothesis;
  bool converged = false;       // unchanged over the final quarter
  bool budgets_clean = true;
  bool faults = false;
  std::optional<bool> correct;  // set when a target is known
};

/// Runs `cycles` cycles of `l` on `t` and records budget verdicts.
inline SessionReport run_session(Learner& l, Text& t, std::size_t cycles, std::size_t rate, std::size_t slack) {
  SessionReport rep;
  rep.learner = l.name();
  rep.text_kind = to_string(t.kind());
  rep.seed = t.seed();
  rep.rate = rate;
  rep.slack = slack;
  l.reset();
  std::size_t longest = 0;
  for (std::size_t k = 0; k < cycles; ++k) {
    CycleRecord rec;
    rec.datum = t.next();
    longest = std::max(longest, rec.datum.size());
    rec.longest = longest;
    l.cycle(rec.datum, rec);
    if (!rec.within(rate, slack)) rep.budgets_clean = false;
    if (rec.fault) rep.faults = true;
    if (k > 0 && rec.hypothesis != rep.cycles.back().hypothesis) rep.last_change = k;
    rep.cycles.push_back(std::move(rec));
  }
  if (!rep.cycles.empty()) {
    rep.final_hypothesis = rep.cycles.back().hypothesis;
    rep.converged = rep.last_change <= cycles - cycles / 4 - 1 || rep.last_change == 0;
  }
  return rep;
}

inline SessionReport run_automatic_learner(std::shared_ptr<const AutomaticLearner> m, Text& t, std::size_t cycles) {
  AutomaticLearnerRunner r(m);
  return run_session(r, t, cycles, r.default_rate, r.default_slack);
}

struct LearnVerdict {
  Word target;
  SessionReport session;
  bool pass() const { return session.converged && session.correct.value_or(false) && session.budgets_clean; }
};

struct LearnTable {
  std::vector<LearnVerdict> rows;
  bool pass() const {
    for (auto& r : rows) {
      if (!r.pass()) return false;
    }
    return !rows.empty();
  }
};

/// Runs the learner on a text for each target index and judges convergence,
/// correctness (index equivalence with the target) and budgets.
inline LearnTable check_learns(Learner& l, const AutomaticFamily& fam, const std::vector<Word>& targets, TextKind kind,
                               std::size_t cycles, std::size_t rate, std::size_t slack, std::uint64_t seed = 0,
                               const std::vector<Word>& script = {}) {
  if (!(l.hypothesis_alphabet() == fam.index_alphabet())) {
    throw LearningError("learner hypotheses are not over the family's index alphabet");
  }
  LearnTable table;
  for (auto& e : targets) {
    Dfa lang = language_of(fam, e);
    std::vector<Word> sc;
    for (auto& w : script) {
      if (lang.accepts(w)) sc.push_back(w);
    }
    Text t(kind, lang, seed, sc);
    LearnVerdict v{e, run_session(l, t, cycles, rate, slack)};
    const Word& h = v.session.final_hypothesis;
    v.session.correct = fam.is_index(h) && index_equivalent(fam, h, e);
    table.rows.push_back(std::move(v));
  }
  return table;
}

}  // namespace autolin
