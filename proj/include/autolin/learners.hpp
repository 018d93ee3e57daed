#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "autolin/family_fixtures.hpp"
#include "autolin/learning.hpp"

// Built-in learners: automatic learners for the fixture families, device
// wrappers around them, and an archive-scanning learner.

namespace autolin::fixtures {

namespace learner_detail {

/// Minimal DFA over `a` from a step function on the flattened leaf tuple;
/// leaf-level padding (once PAD, always PAD) is enforced here.
template <class Key, class Step, class Accept>
Dfa leaf_relation(const Alphabet& a, const Key& init, Step step, Accept accept) {
  using K2 = std::pair<std::uint32_t, Key>;
  Dfa d = explore_dfa(
      a, K2{0, init},
      [&](const K2& k, Symbol s) -> std::optional<K2> {
        const auto& lv = a.leaves(s);
        std::uint32_t ended = k.first;
        for (std::size_t i = 0; i < lv.size(); ++i) {
          if (lv[i] == kPad) {
            ended |= 1u << i;
          } else if (ended & (1u << i)) {
            return std::nullopt;
          }
        }
        std::optional<Key> nk = step(k.second, lv);
        if (!nk) return std::nullopt;
        return K2{ended, *nk};
      },
      [&](const K2& k) { return accept(k.second); });
  return minimize(d);
}

inline std::shared_ptr<const AutomaticLearner> make(std::string name, const Alphabet& mem, const Alphabet& dat,
                                                    const Alphabet& hyp, const Dfa& graph, std::size_t slack) {
  auto l = std::make_shared<AutomaticLearner>(AutomaticLearner{std::move(name), AutomaticFunction::certify(graph), mem,
                                                               dat, hyp, Word{}, slack});
  return l;
}

inline Alphabet graph_alphabet(const Alphabet& mem, const Alphabet& dat, const Alphabet& hyp) {
  return Alphabet::convolution({Alphabet::convolution({mem, dat}), Alphabet::convolution({mem, hyp})});
}

}  // namespace learner_detail

/// Extensions family: memory conv(seen-flag, lcp of the data), conjecture the lcp.
inline std::shared_ptr<const AutomaticLearner> extensions_learner() {
  using namespace learner_detail;
  Alphabet w = Alphabet::plain({"0", "1"});
  Alphabet mem = Alphabet::convolution({Alphabet::plain({"f"}), w});
  Alphabet g = graph_alphabet(mem, w, w);
  // leaves: fo lo x | fn ln h; key: started, seen, still matching
  using Key = std::array<bool, 3>;
  Dfa graph = leaf_relation(
      g, Key{false, false, true},
      [](const Key& k, const std::vector<int>& v) -> std::optional<Key> {
        int fo = v[0], lo = v[1], x = v[2], fn = v[3], ln = v[4], h = v[5];
        Key n = k;
        if (!k[0]) {
          n[0] = true;
          n[1] = fo != kPad;
          if (fn != 0) return std::nullopt;
        } else if (fo != kPad || fn != kPad) {
          return std::nullopt;
        }
        if (!n[1]) {
          if (lo != kPad || ln != x) return std::nullopt;
        } else {
          n[2] = k[2] && lo != kPad && lo == x;
          if (ln != (n[2] ? lo : kPad)) return std::nullopt;
        }
        if (h != ln) return std::nullopt;
        return n;
      },
      [](const Key& k) { return k[0]; });
  return make("extensions", mem, w, w, graph, 1);
}

/// Intervals family: memory conv(seen-flag, least datum, greatest datum),
/// conjecture conv(least, greatest).
inline std::shared_ptr<const AutomaticLearner> intervals_learner() {
  using namespace learner_detail;
  using family_detail::Cmp;
  using family_detail::compare_step;
  Alphabet s = Alphabet::plain({"a", "b"});
  Alphabet hyp = Alphabet::convolution({s, s});
  Alphabet mem = Alphabet::convolution({Alphabet::plain({"f"}), s, s});
  Alphabet g = graph_alphabet(mem, s, hyp);
  // leaves: fo loo hio x | fn lon hin hlo hhi; key: started, seen, cmp(loo,x), cmp(x,hio)
  using Key = std::array<std::uint8_t, 4>;
  Dfa graph = leaf_relation(
      g, Key{0, 0, family_detail::Eq, family_detail::Eq},
      [](const Key& k, const std::vector<int>& v) -> std::optional<Key> {
        int fo = v[0], loo = v[1], hio = v[2], x = v[3], fn = v[4], lon = v[5], hin = v[6];
        Key n = k;
        if (!k[0]) {
          n[0] = 1;
          n[1] = fo != kPad;
          if (fn != 0) return std::nullopt;
        } else if (fo != kPad || fn != kPad) {
          return std::nullopt;
        }
        if (!n[1]) {
          if (loo != kPad || hio != kPad || lon != x || hin != x) return std::nullopt;
        } else {
          n[2] = compare_step(static_cast<Cmp>(k[2]), loo, x);
          n[3] = compare_step(static_cast<Cmp>(k[3]), x, hio);
          if (lon != (n[2] == family_detail::Gt ? x : loo)) return std::nullopt;
          if (hin != (n[3] == family_detail::Gt ? x : hio)) return std::nullopt;
        }
        if (v[7] != lon || v[8] != hin) return std::nullopt;
        return n;
      },
      [](const Key& k) { return k[0] != 0; });
  return make("intervals", mem, s, hyp, graph, 1);
}

/// Length-exclusion family: memory bit k records a datum of length k; the
/// conjecture is 0^h for the least h whose bit is unset (or the memory length).
inline std::shared_ptr<const AutomaticLearner> length_bitmap_learner() {
  using namespace learner_detail;
  Alphabet bits = Alphabet::plain({"0", "1"});
  Alphabet w = Alphabet::plain({"0", "1"});
  Alphabet hyp = Alphabet::plain({"0"});
  Alphabet g = graph_alphabet(bits, w, hyp);
  // leaves: mo x | mn hy; key: datum ended, all bits set so far
  using Key = std::array<bool, 2>;
  Dfa graph = leaf_relation(
      g, Key{false, true},
      [](const Key& k, const std::vector<int>& v) -> std::optional<Key> {
        int mo = v[0], x = v[1], mn = v[2], hy = v[3];
        Key n = k;
        int want;
        if (x != kPad) {
          want = mo == 1 ? 1 : 0;
        } else if (!k[0]) {
          want = 1;
          n[0] = true;
        } else {
          want = mo;
        }
        if (mn != want) return std::nullopt;
        n[1] = k[1] && mn == 1;
        if (hy != (n[1] ? 0 : kPad)) return std::nullopt;
        return n;
      },
      [](const Key& k) { return k[0]; });
  return make("length-bitmap", bits, w, hyp, graph, 1);
}

/// Complement-of-a-singleton family: the candidate moves to its length-lex
/// successor whenever it shows up as a datum; the candidate is the conjecture.
inline std::shared_ptr<const AutomaticLearner> missing_string_learner() {
  using namespace learner_detail;
  Alphabet w = Alphabet::plain({"0", "1"});
  Alphabet g = graph_alphabet(w, w, w);
  // Successor NFA on (c, c'): 0 copy prefix, 1 after the 0→1 flip (1→0 after),
  // 2 all-ones branch (1→0), 3 after the appended 0.
  // leaves: co x | cn h; key: c == x so far, c' == c so far, successor NFA states
  using Key = std::array<std::uint8_t, 3>;
  Dfa graph = leaf_relation(
      g, Key{1, 1, 0b0101},
      [](const Key& k, const std::vector<int>& v) -> std::optional<Key> {
        int co = v[0], x = v[1], cn = v[2], h = v[3];
        if (h != cn) return std::nullopt;
        Key n{static_cast<std::uint8_t>(k[0] && co == x), static_cast<std::uint8_t>(k[1] && cn == co), 0};
        std::uint8_t s = k[2], t = 0;
        if ((s & 1) && co != kPad && co == cn) t |= 1;
        if ((s & 1) && co == 0 && cn == 1) t |= 2;
        if ((s & 2) && co == 1 && cn == 0) t |= 2;
        if ((s & 4) && co == 1 && cn == 0) t |= 4;
        if ((s & 4) && co == kPad && cn == 0) t |= 8;
        n[2] = t;
        if (!n[1] && t == 0) return std::nullopt;
        return n;
      },
      [](const Key& k) { return k[0] ? (k[2] & 0b1010) != 0 : k[1] != 0; });
  return make("missing-string", w, w, w, graph, 1);
}

// ---------------------------------------------------------------------------
// Device wrappers around an automatic learner M.

namespace learner_detail {

class WrapperBase : public Learner {
 public:
  explicit WrapperBase(std::shared_ptr<const AutomaticLearner> m) : m_(std::move(m)) {}
  const Alphabet& hypothesis_alphabet() const override { return m_->hypothesis_alphabet; }
  const AutomaticLearner& inner() const { return *m_; }

 protected:
  void reset_inner() {
    memory_ = m_->initial_memory;
    hypothesis_.clear();
  }
  /// Feeds one datum to M; false on an undefined update.
  bool feed(const Word& w, CycleRecord& rec) {
    rec.fed.push_back(w);
    auto r = m_->apply(memory_, w);
    if (!r) return false;
    memory_ = r->first;
    hypothesis_ = r->second;
    return true;
  }

  std::shared_ptr<const AutomaticLearner> m_;
  Word memory_;
  Word hypothesis_;
};

/// Two archives used alternately: read one word back from the source while
/// appending the datum and that word to the target; swap when the source empties.
template <class Dev>
class ArchivePairWrapper : public WrapperBase {
 public:
  ArchivePairWrapper(std::shared_ptr<const AutomaticLearner> m, std::string prefix, std::size_t rate, std::size_t slack)
      : WrapperBase(std::move(m)), prefix_(std::move(prefix)) {
    default_rate = rate;
    default_slack = slack;
    reset();
  }
  std::string name() const override { return prefix_ + ":" + m_->name; }
  void reset() override {
    reset_inner();
    dev_[0] = Dev();
    dev_[1] = Dev();
    src_ = 0;
  }
  void cycle(const Word& w, CycleRecord& rec) override {
    dev_[0].start_cycle();
    dev_[1].start_cycle();
    bool ok = feed(w, rec);
    Word t = take(dev_[src_]).value_or(w);
    ok = ok && feed(t, rec);
    put(dev_[1 - src_], w);
    put(dev_[1 - src_], t);
    if (dev_[src_].empty()) src_ = 1 - src_;
    rec.fault = !ok;
    rec.hypothesis = hypothesis_;
    rec.scratch = {w, t, memory_, hypothesis_};
    rec.device_steps = {{std::string(dev_[0].kind()) + "1", dev_[0].cycle_steps()},
                        {std::string(dev_[1].kind()) + "2", dev_[1].cycle_steps()}};
  }
  const Dev& device(int i) const { return dev_[i]; }
  int source() const { return src_; }

 private:
  static std::optional<Word> take(TapeDevice& d) { return d.pop_last_word(); }
  static std::optional<Word> take(StackDevice& d) { return d.pop_word(); }
  static void put(TapeDevice& d, const Word& w) { d.append_word(w); }
  static void put(StackDevice& d, const Word& w) { d.push_word(w); }

  std::string prefix_;
  Dev dev_[2];
  int src_ = 0;
};

}  // namespace learner_detail

using TwoTapeWrapper = learner_detail::ArchivePairWrapper<TapeDevice>;
using StackPairWrapper = learner_detail::ArchivePairWrapper<StackDevice>;

inline std::unique_ptr<Learner> two_tape_wrapper(std::shared_ptr<const AutomaticLearner> m) {
  return std::make_unique<TwoTapeWrapper>(std::move(m), "twotape", 6, 2);
}
inline std::unique_ptr<Learner> stack_pair_wrapper(std::shared_ptr<const AutomaticLearner> m) {
  return std::make_unique<StackPairWrapper>(std::move(m), "twostack", 6, 2);
}

/// One queue: enqueue the datum, dequeue the front word, re-enqueue it and
/// feed it to M.
class QueueWrapper : public learner_detail::WrapperBase {
 public:
  explicit QueueWrapper(std::shared_ptr<const AutomaticLearner> m) : WrapperBase(std::move(m)) {
    default_rate = 4;
    default_slack = 2;
    reset();
  }
  std::string name() const override { return "queue:" + m_->name; }
  void reset() override {
    reset_inner();
    q_ = QueueDevice();
  }
  void cycle(const Word& v, CycleRecord& rec) override {
    q_.start_cycle();
    q_.enqueue_word(v);
    Word w = *q_.dequeue_word();
    q_.enqueue_word(w);
    rec.fault = !feed(w, rec);
    rec.hypothesis = hypothesis_;
    rec.scratch = {v, w, memory_, hypothesis_};
    rec.device_steps = {{"queue", q_.cycle_steps()}};
  }
  const QueueDevice& queue() const { return q_; }

 private:
  QueueDevice q_;
};

inline std::unique_ptr<Learner> queue_wrapper(std::shared_ptr<const AutomaticLearner> m) {
  return std::make_unique<QueueWrapper>(std::move(m));
}

/// Learner for the thm35 family with one archive tape. Data are archived and
/// ε conjectured until some x2 arrives; then x0 is conjectured while the
/// archive is scrolled back one word per cycle; seeing x (archived or as a
/// datum) switches to x1 for good.
class ArchiveScanLearner : public Learner {
 public:
  ArchiveScanLearner() {
    default_rate = 4;
    default_slack = 1;
    reset();
  }
  std::string name() const override { return "archive-scan"; }
  const Alphabet& hypothesis_alphabet() const override { return hyp_alpha_; }
  void reset() override {
    tape_ = TapeDevice();
    phase_ = Phase::Archive;
    x2_.clear();
    hyp_.clear();
  }
  void cycle(const Word& v, CycleRecord& rec) override {
    tape_.start_cycle();
    constexpr Symbol two = 2;
    switch (phase_) {
      case Phase::Archive:
        if (!v.empty() && v.back() == two && std::count(v.begin(), v.end(), two) == 1) {
          x2_ = v;
          hyp_ = stem();
          hyp_.push_back(0);
          phase_ = Phase::Scan;
        } else {
          tape_.append_word(v);
        }
        break;
      case Phase::Scan: {
        if (v == stem()) {
          conclude();
          break;
        }
        auto t = tape_.pop_last_word();
        if (t && *t == stem()) {
          conclude();
        } else if (tape_.empty()) {
          phase_ = Phase::Watch;
        }
        break;
      }
      case Phase::Watch:
        if (v == stem()) conclude();
        break;
      case Phase::Final:
        break;
    }
    rec.fed.push_back(v);
    rec.hypothesis = hyp_;
    rec.scratch = {v, x2_, hyp_};
    rec.device_steps = {{"tape1", tape_.cycle_steps()}};
  }
  const TapeDevice& tape() const { return tape_; }

 private:
  enum class Phase { Archive, Scan, Watch, Final };
  Word stem() const { return Word(x2_.begin(), x2_.end() - (x2_.empty() ? 0 : 1)); }
  void conclude() {
    hyp_ = stem();
    hyp_.push_back(1);
    phase_ = Phase::Final;
  }

  Alphabet hyp_alpha_ = Alphabet::plain({"0", "1"});
  TapeDevice tape_;
  Phase phase_ = Phase::Archive;
  Word x2_;
  Word hyp_;
};

// ---------------------------------------------------------------------------
// Catalog

struct NamedAutomaticLearner {
  std::string name;
  std::string family;
  std::shared_ptr<const AutomaticLearner> (*make)();
};

inline const std::vector<NamedAutomaticLearner>& automatic_learners() {
  static const std::vector<NamedAutomaticLearner> all{{"extensions", "extensions", extensions_learner},
                                                      {"intervals", "intervals", intervals_learner},
                                                      {"length-bitmap", "length-excl", length_bitmap_learner},
                                                      {"missing-string", "complement-singleton", missing_string_learner}};
  return all;
}

/// Automatic learners are built once per process.
inline std::shared_ptr<const AutomaticLearner> automatic_learner(const std::string& name) {
  static std::map<std::string, std::shared_ptr<const AutomaticLearner>> cache;
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  for (auto& e : automatic_learners()) {
    if (e.name == name) return cache[name] = e.make();
  }
  return nullptr;
}

/// Learner names: an automatic learner, "twotape:<m>", "queue:<m>",
/// "twostack:<m>", or "archive-scan".
inline std::unique_ptr<Learner> make_learner(const std::string& name) {
  if (name == "archive-scan") return std::make_unique<ArchiveScanLearner>();
  auto colon = name.find(':');
  if (colon == std::string::npos) {
    auto m = automatic_learner(name);
    return m ? std::make_unique<AutomaticLearnerRunner>(m) : nullptr;
  }
  auto m = automatic_learner(name.substr(colon + 1));
  if (!m) return nullptr;
  std::string w = name.substr(0, colon);
  if (w == "twotape") return two_tape_wrapper(m);
  if (w == "queue") return queue_wrapper(m);
  if (w == "twostack") return stack_pair_wrapper(m);
  return nullptr;
}

/// Family a learner is meant for.
inline std::optional<std::string> learner_family(const std::string& name) {
  if (name == "archive-scan") return "thm35";
  std::string base = name.substr(name.find(':') == std::string::npos ? 0 : name.find(':') + 1);
  for (auto& e : automatic_learners()) {
    if (e.name == base) return e.family;
  }
  return std::nullopt;
}

inline std::vector<std::string> learner_names() {
  std::vector<std::string> out;
  for (auto& e : automatic_learners()) out.push_back(e.name);
  for (auto& e : automatic_learners()) {
    for (const char* w : {"twotape", "queue", "twostack"}) out.push_back(std::string(w) + ":" + e.name);
  }
  out.push_back("archive-scan");
  return out;
}

}  // namespace autolin::fixtures
