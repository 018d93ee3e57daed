#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <optional>
#include <tuple>
#include <variant>
#include <vector>

#include "autolin/automata.hpp"

namespace autolin {

struct FunctionalityError : Error {
  using Error::Error;
};

/// Relation given by a DFA over the convolution of its argument tracks.
class AutomaticRelation {
 public:
  explicit AutomaticRelation(Dfa graph) : graph_(std::move(graph)) {
    if (!graph_.alphabet().is_convolution()) throw AlphabetError("relation graph must be over a convolution alphabet");
    if (graph_.alphabet().has_all_pad()) throw AlphabetError("relation graph must not contain the all-PAD tuple");
  }
  const Dfa& graph() const { return graph_; }
  std::size_t arity() const { return graph_.alphabet().arity(); }
  const Alphabet& track(std::size_t i) const { return graph_.alphabet().track(i); }

  bool contains(const std::vector<Word>& words) const { return graph_.accepts(convolve(words, graph_.alphabet())); }

  /// Co-reachable states of the graph, computed once.
  const std::vector<bool>& live() const {
    if (!live_) live_ = std::make_shared<const std::vector<bool>>(coreachable_states(graph_));
    return *live_;
  }

 private:
  Dfa graph_;
  mutable std::shared_ptr<const std::vector<bool>> live_;
};

/// Witness that a binary relation is not a function: r(x, y), r(x, y2), y != y2.
struct FunctionalityViolation {
  Word x, y, y2;
};

struct FunctionalityCertificate {
  std::size_t product_states = 0;
};

using FunctionalityVerdict = std::variant<FunctionalityCertificate, FunctionalityViolation>;

namespace autofn_detail {

inline std::vector<bool> useful_states(const Dfa& d) {
  auto reach = reachable_states(d);
  auto live = coreachable_states(d);
  for (std::size_t i = 0; i < reach.size(); ++i) reach[i] = reach[i] && live[i];
  return reach;
}

}  // namespace autofn_detail

/// Decides whether a binary relation is functional by searching the product
/// of two PAD-lifted copies of the graph (sharing the input track) with an
/// output-inequality tracker. Output symbols leading to the same successor
/// are grouped so large output alphabets stay cheap.
inline FunctionalityVerdict check_functional(const AutomaticRelation& r) {
  if (r.arity() != 2) throw AlphabetError("check_functional: relation must be binary");
  const Dfa& g = r.graph();
  const Alphabet& conv = g.alphabet();
  const int in_n = static_cast<int>(conv.track(0).size());
  const int out_n = static_cast<int>(conv.track(1).size());
  auto useful = autofn_detail::useful_states(g);

  // Product node: q1, q2, flags (bit0 done1, bit1 done2, bit2 xend, bit3 y1end, bit4 y2end, bit5 neq).
  using Node = std::tuple<State, State, unsigned>;
  struct Edge {
    std::size_t parent;
    int a, b, b2;
  };
  std::map<Node, std::size_t> ids;
  std::vector<Node> nodes;
  std::vector<Edge> parents;
  auto intern = [&](const Node& n, Edge e) {
    auto [it, fresh] = ids.emplace(n, nodes.size());
    if (fresh) {
      nodes.push_back(n);
      parents.push_back(e);
    }
    return fresh;
  };
  if (!useful[g.start()]) return FunctionalityCertificate{0};
  intern(Node{g.start(), g.start(), 0u}, Edge{SIZE_MAX, 0, 0, 0});

  struct Outcome {
    State q;
    bool done;
    bool yend;
    bool operator<(const Outcome& o) const { return std::tie(q, done, yend) < std::tie(o.q, o.done, o.yend); }
  };
  auto advance = [&](State q, bool done, bool yend, int a, int b) -> std::optional<Outcome> {
    if (b != kPad && yend) return std::nullopt;
    bool ny = yend || b == kPad;
    if (a == kPad && b == kPad) return Outcome{q, true, ny};
    if (done) return std::nullopt;
    std::vector<int> c{a, b};
    State t = g.next(q, *conv.symbol_of(c));
    if (!useful[t]) return std::nullopt;
    return Outcome{t, false, ny};
  };
  auto order_key = [&](int b) { return b == kPad ? out_n : b; };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [q1, q2, flags] = nodes[i];
    bool done1 = flags & 1u, done2 = flags & 2u, xend = flags & 4u, y1end = flags & 8u, y2end = flags & 16u,
         neq = flags & 32u;
    if (g.accepting(q1) && g.accepting(q2) && neq) {
      FunctionalityViolation v;
      for (std::size_t k = i; parents[k].parent != SIZE_MAX; k = parents[k].parent) {
        auto& e = parents[k];
        if (e.a != kPad) v.x.push_back(static_cast<Symbol>(e.a));
        if (e.b != kPad) v.y.push_back(static_cast<Symbol>(e.b));
        if (e.b2 != kPad) v.y2.push_back(static_cast<Symbol>(e.b2));
      }
      std::reverse(v.x.begin(), v.x.end());
      std::reverse(v.y.begin(), v.y.end());
      std::reverse(v.y2.begin(), v.y2.end());
      return v;
    }
    for (int ai = 0; ai <= in_n; ++ai) {
      int a = ai == in_n ? kPad : ai;
      if (a != kPad && xend) continue;
      std::map<Outcome, std::vector<int>> g1, g2;
      for (int bi = 0; bi <= out_n; ++bi) {
        int b = bi == out_n ? kPad : bi;
        if (auto o = advance(q1, done1, y1end, a, b)) g1[*o].push_back(b);
        if (auto o = advance(q2, done2, y2end, a, b)) g2[*o].push_back(b);
      }
      for (auto& [o1, bs1] : g1) {
        for (auto& [o2, bs2] : g2) {
          unsigned base = (o1.done ? 1u : 0u) | (o2.done ? 2u : 0u) | ((xend || a == kPad) ? 4u : 0u) |
                          (o1.yend ? 8u : 0u) | (o2.yend ? 16u : 0u);
          // Equal output pair (keeps neq as is).
          for (int b : bs1) {
            if (b == kPad && a == kPad) continue;  // the all-PAD position is not a symbol
            if (std::find(bs2.begin(), bs2.end(), b) != bs2.end()) {
              intern(Node{o1.q, o2.q, base | (neq ? 32u : 0u)}, Edge{i, a, b, b});
              break;
            }
          }
          // Distinct output pair, lexicographically least.
          std::optional<std::pair<int, int>> best;
          for (int b : bs1) {
            for (int b2 : bs2) {
              if (b == b2) continue;
              std::pair<int, int> cand{order_key(b), order_key(b2)};
              if (!best || cand < std::pair<int, int>{order_key(best->first), order_key(best->second)}) {
                best = std::pair<int, int>{b, b2};
              }
            }
          }
          if (best) intern(Node{o1.q, o2.q, base | 32u}, Edge{i, a, best->first, best->second});
        }
      }
    }
  }
  return FunctionalityCertificate{nodes.size()};
}

inline bool is_functional(const AutomaticRelation& r) {
  return std::holds_alternative<FunctionalityCertificate>(check_functional(r));
}

/// Longest run of output symbols past the end of the input, read off the
/// subgraph of PAD-input transitions that can still reach acceptance.
/// A cycle there means infinitely many outputs for some input.
inline std::size_t length_bound(const AutomaticRelation& r) {
  if (r.arity() != 2) throw AlphabetError("length_bound: relation must be binary");
  const Dfa& g = r.graph();
  const Alphabet& conv = g.alphabet();
  auto reach = reachable_states(g);
  std::vector<std::vector<State>> pad_out(g.size());
  std::vector<std::vector<State>> pad_in(g.size());
  for (State q = 0; q < g.size(); ++q) {
    for (Symbol s = 0; s < conv.size(); ++s) {
      if (conv.component(s, 0) == kPad) {
        pad_out[q].push_back(g.next(q, s));
        pad_in[g.next(q, s)].push_back(q);
      }
    }
  }
  // States that can still accept using PAD-input transitions only.
  std::vector<bool> padlive(g.size(), false);
  std::vector<State> stack;
  for (State q = 0; q < g.size(); ++q) {
    if (g.accepting(q)) {
      padlive[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : pad_in[q]) {
      if (!padlive[p]) {
        padlive[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<int> color(g.size(), 0);
  std::vector<std::size_t> longest(g.size(), 0);
  std::function<void(State)> visit = [&](State q) {
    color[q] = 1;
    for (State t : pad_out[q]) {
      if (!padlive[t]) continue;
      if (color[t] == 1) throw FunctionalityError("length_bound: cycle of PAD-input transitions; relation is not a function");
      if (color[t] == 0) visit(t);
      longest[q] = std::max(longest[q], longest[t] + 1);
    }
    color[q] = 2;
  };
  std::size_t c = 0;
  for (State q = 0; q < g.size(); ++q) {
    if (reach[q] && padlive[q]) {
      if (color[q] == 0) visit(q);
      c = std::max(c, longest[q]);
    }
  }
  return c;
}

/// Binary automatic relation certified functional, with its length slack c:
/// |f(x)| <= |x| + c for every x in the domain.
class AutomaticFunction {
 public:
  static AutomaticFunction certify(AutomaticRelation r) {
    auto verdict = check_functional(r);
    if (auto* v = std::get_if<FunctionalityViolation>(&verdict)) {
      throw FunctionalityError("relation is not functional: input '" + r.track(0).format(v->x) + "' has outputs '" +
                               r.track(1).format(v->y) + "' and '" + r.track(1).format(v->y2) + "'");
    }
    std::size_t c = length_bound(r);
    return AutomaticFunction(std::move(r), c);
  }
  static AutomaticFunction certify(Dfa graph) { return certify(AutomaticRelation(std::move(graph))); }

  const AutomaticRelation& relation() const { return relation_; }
  const Dfa& graph() const { return relation_.graph(); }
  const Alphabet& input_alphabet() const { return relation_.track(0); }
  const Alphabet& output_alphabet() const { return relation_.track(1); }
  std::size_t slack() const { return slack_; }

 private:
  AutomaticFunction(AutomaticRelation r, std::size_t c) : relation_(std::move(r)), slack_(c) {}
  AutomaticRelation relation_;
  std::size_t slack_;
};

/// Evaluates f(x) by searching accepting paths of the graph with the input
/// track fixed to x. Returns nullopt when x is outside the domain (or uses a
/// symbol outside the input alphabet).
inline std::optional<Word> evaluate(const AutomaticRelation& r, const Word& x) {
  const Dfa& g = r.graph();
  const Alphabet& conv = g.alphabet();
  const std::size_t in_n = conv.track(0).size();
  const std::size_t out_n = conv.track(1).size();
  for (Symbol s : x) {
    if (s >= in_n) return std::nullopt;
  }
  const auto& live = r.live();
  // Node (q, i, ydone); count of accepted outputs from here, capped at 2.
  using Node = std::tuple<State, std::size_t, bool>;
  std::map<Node, int> memo;
  std::set<Node> on_stack;
  auto children = [&](const Node& n, std::vector<std::pair<int, Node>>& out) {
    auto [q, i, ydone] = n;
    out.clear();
    if (i == x.size() && ydone) return;
    int a = i < x.size() ? static_cast<int>(x[i]) : kPad;
    for (std::size_t bi = 0; bi <= out_n; ++bi) {
      int b = bi == out_n ? kPad : static_cast<int>(bi);
      if (b != kPad && ydone) continue;
      if (a == kPad && b == kPad) continue;
      std::vector<int> c{a, b};
      State t = g.next(q, *conv.symbol_of(c));
      if (!live[t]) continue;
      out.emplace_back(b, Node{t, std::min(i + 1, x.size()), ydone || b == kPad});
    }
  };
  std::function<int(const Node&)> count = [&](const Node& n) -> int {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    if (on_stack.count(n)) return 2;  // a cycle yields unboundedly many outputs
    on_stack.insert(n);
    int total = (std::get<1>(n) == x.size() && g.accepting(std::get<0>(n))) ? 1 : 0;
    std::vector<std::pair<int, Node>> kids;
    children(n, kids);
    for (auto& [b, k] : kids) {
      total = std::min(2, total + count(k));
      if (total >= 2) break;
    }
    on_stack.erase(n);
    memo[n] = total;
    return total;
  };
  Node root{g.start(), 0, false};
  if (!live[g.start()]) return std::nullopt;
  int n = count(root);
  if (n == 0) return std::nullopt;
  if (n >= 2) {
    throw FunctionalityError("evaluate: input '" + conv.track(0).format(x) + "' has more than one output");
  }
  Word y;
  Node cur = root;
  std::vector<std::pair<int, Node>> kids;
  for (;;) {
    if (std::get<1>(cur) == x.size() && g.accepting(std::get<0>(cur))) break;
    children(cur, kids);
    bool moved = false;
    for (auto& [b, k] : kids) {
      if (count(k) > 0) {
        if (b != kPad) y.push_back(static_cast<Symbol>(b));
        cur = k;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return y;
}

inline std::optional<Word> evaluate(const AutomaticFunction& f, const Word& x) { return evaluate(f.relation(), x); }

/// dom(f) as a minimal DFA over the input alphabet.
inline Dfa domain(const AutomaticRelation& r) { return minimize(determinize(project(r.graph(), {0}))); }
inline Dfa domain(const AutomaticFunction& f) { return domain(f.relation()); }

}  // namespace autolin
