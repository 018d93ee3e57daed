#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "autolin/automata.hpp"

namespace autolin {

struct MachineError : Error {
  using Error::Error;
};

using TapeSymbol = std::uint32_t;
enum class Dir { L, R };

inline constexpr TapeSymbol kLend = 0;
inline constexpr TapeSymbol kBlank = 1;

struct TmTransition {
  State to;
  TapeSymbol write;
  Dir dir;
  friend bool operator==(const TmTransition&, const TmTransition&) = default;
};

/// Position-faithful one-tape machine. Tape symbol 0 is the left-end marker,
/// 1 is the blank; input (and output) symbols are tape symbols with the same
/// token as in the respective alphabets.
class TuringMachine {
 public:
  TuringMachine() : TuringMachine(Alphabet::plain({"0"})) {}
  explicit TuringMachine(Alphabet input, std::optional<Alphabet> output = std::nullopt)
      : input_(std::move(input)), output_(output ? std::move(*output) : input_) {
    gamma_ = {kLendToken, kBlankToken};
    gamma_index_ = {{kLendToken, kLend}, {kBlankToken, kBlank}};
    for (auto& t : input_.tokens()) symbol(t);
    for (auto& t : output_.tokens()) symbol(t);
  }
  /// Explicit tape alphabet order; it must start with the marker and the blank
  /// and contain every input and output token.
  TuringMachine(Alphabet input, Alphabet output, const std::vector<std::string>& tape_tokens)
      : input_(std::move(input)), output_(std::move(output)) {
    if (tape_tokens.size() < 2 || tape_tokens[0] != kLendToken || tape_tokens[1] != kBlankToken) {
      throw MachineError("tape alphabet must start with " + kLendToken + " and " + kBlankToken);
    }
    for (auto& t : tape_tokens) {
      if (!gamma_index_.emplace(t, static_cast<TapeSymbol>(gamma_.size())).second) {
        throw MachineError("duplicate tape symbol '" + t + "'");
      }
      gamma_.push_back(t);
    }
    for (auto* a : {&input_, &output_}) {
      for (auto& t : a->tokens()) {
        if (!gamma_index_.count(t)) throw MachineError("tape alphabet lacks symbol '" + t + "'");
      }
    }
  }

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }

  /// Tape symbol for `token`, added on first use.
  TapeSymbol symbol(const std::string& token) {
    auto [it, fresh] = gamma_index_.emplace(token, static_cast<TapeSymbol>(gamma_.size()));
    if (fresh) {
      gamma_.push_back(token);
      for (auto& row : delta_) row.resize(gamma_.size());
    }
    return it->second;
  }
  std::optional<TapeSymbol> find_symbol(const std::string& token) const {
    auto it = gamma_index_.find(token);
    if (it == gamma_index_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& token(TapeSymbol s) const { return gamma_.at(s); }
  std::size_t tape_alphabet_size() const { return gamma_.size(); }
  const std::vector<std::string>& tape_tokens() const { return gamma_; }

  State add_state(const std::string& name, bool accepting = false) {
    if (!state_index_.emplace(name, static_cast<State>(names_.size())).second) {
      throw MachineError("duplicate state '" + name + "'");
    }
    names_.push_back(name);
    accepting_.push_back(accepting);
    delta_.emplace_back(gamma_.size());
    return static_cast<State>(names_.size() - 1);
  }
  std::optional<State> find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return names_.size(); }
  const std::string& name(State q) const { return names_.at(q); }
  State start() const { return start_; }
  void set_start(State q) { start_ = q; }
  bool accepting(State q) const { return accepting_.at(q); }
  void set_accepting(State q, bool v = true) {
    if (v && !delta_[q].empty()) {
      for (auto& row : delta_[q]) {
        if (!row.empty()) throw MachineError("accepting state '" + names_[q] + "' has outgoing transitions");
      }
    }
    accepting_[q] = v;
  }

  void add_transition(State from, TapeSymbol read, State to, TapeSymbol write, Dir dir) {
    if (accepting_.at(from)) throw MachineError("accepting state '" + names_[from] + "' cannot have transitions");
    if (to >= size() || read >= gamma_.size() || write >= gamma_.size()) throw MachineError("transition out of range");
    if (read == kLend && (write != kLend || dir != Dir::R)) {
      throw MachineError("transitions on the left-end marker must keep it and move right (state '" + names_[from] + "')");
    }
    if (read != kLend && write == kLend) throw MachineError("the left-end marker cannot be written elsewhere");
    auto& cell = delta_[from][read];
    TmTransition t{to, write, dir};
    if (std::find(cell.begin(), cell.end(), t) == cell.end()) cell.push_back(t);
  }
  const std::vector<TmTransition>& transitions(State q, TapeSymbol s) const { return delta_.at(q).at(s); }

  bool deterministic() const {
    for (auto& row : delta_) {
      for (auto& cell : row) {
        if (cell.size() > 1) return false;
      }
    }
    return true;
  }

  TapeSymbol tape_symbol_of_input(Symbol s) const { return gamma_index_.at(input_.token(s)); }

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> gamma_;
  std::unordered_map<std::string, TapeSymbol> gamma_index_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, State> state_index_;
  std::vector<bool> accepting_;
  State start_ = 0;
  std::vector<std::vector<std::vector<TmTransition>>> delta_;
};

struct Configuration {
  std::vector<TapeSymbol> tape;
  std::size_t head = 0;
  State state = 0;
};

inline Configuration initial_configuration(const TuringMachine& m, const Word& x) {
  Configuration c;
  c.tape.push_back(kLend);
  for (Symbol s : x) {
    if (s >= m.input_alphabet().size()) throw MachineError("input symbol outside the input alphabet");
    c.tape.push_back(m.tape_symbol_of_input(s));
  }
  c.tape.push_back(kBlank);
  c.state = m.start();
  return c;
}

namespace tm_detail {

inline void apply(Configuration& c, const TmTransition& t) {
  c.tape[c.head] = t.write;
  c.state = t.to;
  if (t.dir == Dir::L) {
    if (c.head == 0) throw MachineError("move left from cell 0");
    --c.head;
  } else {
    ++c.head;
    if (c.head >= c.tape.size()) c.tape.push_back(kBlank);
  }
}

}  // namespace tm_detail

/// Successor configurations; empty when the machine halts.
inline std::vector<Configuration> step(const TuringMachine& m, const Configuration& c) {
  std::vector<Configuration> out;
  if (c.tape.empty() || c.tape[0] != kLend) throw MachineError("configuration lost its left-end marker");
  for (auto& t : m.transitions(c.state, c.tape.at(c.head))) {
    Configuration n = c;
    tm_detail::apply(n, t);
    out.push_back(std::move(n));
  }
  return out;
}

enum class Outcome { Accepted, Rejected, Timeout };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Accepted: return "accepted";
    case Outcome::Rejected: return "rejected";
    case Outcome::Timeout: return "timeout";
  }
  return "?";
}

struct TraceEntry {
  std::size_t step;
  State state;
  std::size_t head;
  TapeSymbol read;
  TapeSymbol write;
  Dir dir;
};

struct RunResult {
  Outcome outcome = Outcome::Rejected;
  std::optional<std::vector<std::string>> output;  // tokens between LEND and the first BLANK
  std::size_t steps = 0;
  std::vector<std::size_t> visits;  // steps executed at each cell
  std::size_t excursion = 0;
  std::vector<TapeSymbol> final_tape;
  std::vector<TraceEntry> trace;

  bool accepted() const { return outcome == Outcome::Accepted; }
  std::size_t max_visits() const { return visits.empty() ? 0 : *std::max_element(visits.begin(), visits.end()); }
};

namespace tm_detail {

inline std::vector<std::string> read_output(const TuringMachine& m, const std::vector<TapeSymbol>& tape) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < tape.size() && tape[i] != kBlank; ++i) out.push_back(m.token(tape[i]));
  return out;
}

inline void finish(const TuringMachine& m, const Configuration& c, RunResult& r) {
  r.final_tape = c.tape;
  if (m.accepting(c.state)) {
    r.outcome = Outcome::Accepted;
    r.output = read_output(m, c.tape);
  } else {
    r.outcome = Outcome::Rejected;
  }
}

}  // namespace tm_detail

/// Runs a deterministic machine on ⊞x⋄… from cell 0 for at most `budget` steps.
inline RunResult run_deterministic(const TuringMachine& m, const Word& x, std::size_t budget, bool record_trace = false) {
  if (!m.deterministic()) throw MachineError("run_deterministic: machine is nondeterministic");
  Configuration c = initial_configuration(m, x);
  RunResult r;
  r.visits.assign(c.tape.size(), 0);
  for (;;) {
    const auto& ts = m.transitions(c.state, c.tape[c.head]);
    if (ts.empty()) {
      tm_detail::finish(m, c, r);
      break;
    }
    if (r.steps >= budget) {
      r.outcome = Outcome::Timeout;
      r.final_tape = c.tape;
      break;
    }
    if (record_trace) r.trace.push_back({r.steps, c.state, c.head, c.tape[c.head], ts[0].write, ts[0].dir});
    if (r.visits.size() <= c.head) r.visits.resize(c.head + 1, 0);
    ++r.visits[c.head];
    ++r.steps;
    tm_detail::apply(c, ts[0]);
    r.excursion = std::max(r.excursion, c.head);
  }
  if (r.visits.size() < c.tape.size()) r.visits.resize(c.tape.size(), 0);
  return r;
}

struct NondetResult {
  std::vector<RunResult> accepting;  // distinct accepting runs
  bool timed_out = false;            // some branch exceeded the budget
  std::size_t max_steps = 0;         // over all halted branches
};

/// Exhaustive depth-first search over all branches within the step budget.
/// Throws if two accepting runs disagree on the output.
inline NondetResult run_nondet(const TuringMachine& m, const Word& x, std::size_t budget) {
  NondetResult res;
  Configuration c = initial_configuration(m, x);
  RunResult cur;
  cur.visits.assign(c.tape.size(), 0);
  std::set<std::tuple<std::size_t, std::vector<std::size_t>, std::vector<TapeSymbol>>> seen;
  std::function<void(Configuration&, RunResult&)> dfs = [&](Configuration& cfg, RunResult& run) {
    const auto& ts = m.transitions(cfg.state, cfg.tape[cfg.head]);
    if (ts.empty()) {
      RunResult done = run;
      tm_detail::finish(m, cfg, done);
      if (done.visits.size() < cfg.tape.size()) done.visits.resize(cfg.tape.size(), 0);
      res.max_steps = std::max(res.max_steps, done.steps);
      if (done.accepted()) {
        if (!res.accepting.empty() && *res.accepting.front().output != *done.output) {
          throw MachineError("accepting runs produce different outputs");
        }
        if (seen.emplace(done.steps, done.visits, done.final_tape).second) res.accepting.push_back(std::move(done));
      }
      return;
    }
    if (run.steps >= budget) {
      res.timed_out = true;
      return;
    }
    for (auto& t : ts) {
      Configuration next = cfg;
      RunResult nr = run;
      if (nr.visits.size() <= next.head) nr.visits.resize(next.head + 1, 0);
      ++nr.visits[next.head];
      ++nr.steps;
      tm_detail::apply(next, t);
      nr.excursion = std::max(nr.excursion, next.head);
      dfs(next, nr);
    }
  };
  dfs(c, cur);
  return res;
}

struct LinearTimeViolation {
  Word x;
  std::size_t budget;
};

struct LinearTimeReport {
  bool pass = true;
  std::size_t rate = 0;
  std::size_t maxlen = 0;
  std::size_t inputs_checked = 0;
  std::vector<LinearTimeViolation> violations;
};

/// Every run on every x with |x| <= maxlen must halt within rate·(|x|+1) steps.
inline LinearTimeReport check_linear_time(const TuringMachine& m, std::size_t rate, std::size_t maxlen,
                                          std::size_t max_reported = 5) {
  LinearTimeReport rep;
  rep.rate = rate;
  rep.maxlen = maxlen;
  for_each_word(m.input_alphabet().size(), maxlen, [&](const Word& x) {
    ++rep.inputs_checked;
    std::size_t budget = rate * (x.size() + 1);
    auto r = run_nondet(m, x, budget);
    if (r.timed_out) {
      rep.pass = false;
      if (rep.violations.size() < max_reported) rep.violations.push_back({x, budget});
    }
  });
  return rep;
}

/// Largest per-cell visit count over accepting runs on inputs up to `maxlen`;
/// nullopt when no accepting run exists. Runs use a generous budget.
inline std::optional<std::size_t> visit_bound_estimate(const TuringMachine& m, std::size_t maxlen,
                                                       std::size_t budget_rate = 64) {
  std::optional<std::size_t> best;
  for_each_word(m.input_alphabet().size(), maxlen, [&](const Word& x) {
    auto r = run_nondet(m, x, budget_rate * (x.size() + 1));
    for (auto& run : r.accepting) best = std::max(best.value_or(0), run.max_visits());
  });
  return best;
}

/// Redirects every entry into an accepting state to a routine that sweeps
/// left to the marker, steps onto cell 1 and back, and then accepts, so the
/// machine always halts at cell 0.
inline TuringMachine normalize_return_to_origin(const TuringMachine& m) {
  TuringMachine n(m.input_alphabet(), m.output_alphabet());
  for (auto& t : m.tape_tokens()) n.symbol(t);
  auto fresh = [&](const std::string& base) {
    std::string cand = base;
    for (int i = 1; m.find_state(cand); ++i) cand = base + std::to_string(i);
    return cand;
  };
  for (State q = 0; q < m.size(); ++q) n.add_state(m.name(q), m.accepting(q));
  State ret = n.add_state(fresh("ret"));
  State ret2 = n.add_state(fresh("ret_bounce"));
  State halt = n.add_state(fresh("halt"), true);
  n.set_start(m.start());
  for (State q = 0; q < m.size(); ++q) {
    for (TapeSymbol s = 0; s < m.tape_alphabet_size(); ++s) {
      for (auto& t : m.transitions(q, s)) {
        State to = m.accepting(t.to) ? ret : t.to;
        n.add_transition(q, s, to, t.write, t.dir);
      }
    }
  }
  for (TapeSymbol s = 0; s < n.tape_alphabet_size(); ++s) {
    if (s == kLend) {
      n.add_transition(ret, s, ret2, kLend, Dir::R);
    } else {
      n.add_transition(ret, s, ret, s, Dir::L);
    }
    if (s != kLend) n.add_transition(ret2, s, halt, s, Dir::L);
  }
  return n;
}

}  // namespace autolin
