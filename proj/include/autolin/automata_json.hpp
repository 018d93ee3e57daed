#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "autolin/automata.hpp"
#include "json.hpp"

namespace autolin {

using Json = nlohmann::ordered_json;

struct FormatError : Error {
  using Error::Error;
};

inline Json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace json_detail {

inline Json symbol_to_json(const Alphabet& a, Symbol s) {
  if (!a.is_convolution()) return a.token(s);
  Json arr = Json::array();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    int c = a.component(s, i);
    if (c == kPad) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(symbol_to_json(a.track(i), static_cast<Symbol>(c)));
    }
  }
  return arr;
}

inline Alphabet infer_alphabet(const std::vector<Json>& symbols) {
  if (symbols.empty()) throw FormatError("alphabet must be non-empty");
  if (symbols.front().is_string()) {
    std::vector<std::string> toks;
    for (auto& s : symbols) {
      if (!s.is_string()) throw FormatError("alphabet mixes tokens and tuples");
      toks.push_back(s.get<std::string>());
    }
    try {
      return Alphabet::plain(std::move(toks));
    } catch (const AlphabetError& e) {
      throw FormatError(e.what());
    }
  }
  if (!symbols.front().is_array()) throw FormatError("alphabet symbols must be strings or arrays");
  const std::size_t k = symbols.front().size();
  if (k == 0) throw FormatError("empty convolution tuple");
  std::vector<std::vector<Json>> per_track(k);
  bool all_pad = false;
  for (auto& s : symbols) {
    if (!s.is_array() || s.size() != k) throw FormatError("convolution tuples must share one arity");
    bool pad = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (s[i].is_null()) continue;
      pad = false;
      auto& seen = per_track[i];
      if (std::find(seen.begin(), seen.end(), s[i]) == seen.end()) seen.push_back(s[i]);
    }
    all_pad = all_pad || pad;
  }
  std::vector<Alphabet> tracks;
  for (auto& t : per_track) tracks.push_back(infer_alphabet(t));
  Alphabet conv = Alphabet::convolution(std::move(tracks), all_pad);
  if (conv.size() != symbols.size()) throw FormatError("convolution alphabet is not a full tuple set");
  for (Symbol s = 0; s < conv.size(); ++s) {
    if (symbol_to_json(conv, s) != symbols[s]) {
      throw FormatError("convolution alphabet is not in canonical tuple order");
    }
  }
  return conv;
}

inline Symbol symbol_from_json(const Alphabet& a, const Json& j) {
  if (!a.is_convolution()) {
    if (!j.is_string()) throw FormatError("expected symbol token");
    auto s = a.find(j.get<std::string>());
    if (!s) throw FormatError("unknown symbol '" + j.get<std::string>() + "'");
    return *s;
  }
  if (!j.is_array() || j.size() != a.arity()) throw FormatError("expected convolution tuple");
  std::vector<int> comps(a.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) {
    comps[i] = j[i].is_null() ? kPad : static_cast<int>(symbol_from_json(a.track(i), j[i]));
  }
  auto s = a.symbol_of(comps);
  if (!s) throw FormatError("all-PAD tuple is not in this alphabet");
  return *s;
}

inline Json write_alphabet(const Alphabet& a) {
  Json arr = Json::array();
  for (Symbol s = 0; s < a.size(); ++s) arr.push_back(symbol_to_json(a, s));
  return arr;
}

inline Alphabet read_alphabet(const Json& j) {
  if (!j.is_array()) throw FormatError("\"alphabet\" must be an array");
  return infer_alphabet(std::vector<Json>(j.begin(), j.end()));
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

struct StateTable {
  std::vector<std::string> names;
  std::unordered_map<std::string, State> ids;
  State at(const Json& j) const {
    if (!j.is_string()) throw FormatError("state reference must be a string");
    auto it = ids.find(j.get<std::string>());
    if (it == ids.end()) throw FormatError("undeclared state '" + j.get<std::string>() + "'");
    return it->second;
  }
};

inline StateTable states_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("\"states\" must be an array");
  StateTable t;
  for (auto& s : j) {
    if (!s.is_string()) throw FormatError("state names must be strings");
    auto name = s.get<std::string>();
    if (!t.ids.emplace(name, static_cast<State>(t.names.size())).second) {
      throw FormatError("duplicate state '" + name + "'");
    }
    t.names.push_back(name);
  }
  return t;
}

}  // namespace json_detail

inline Json alphabet_to_json(const Alphabet& a) { return json_detail::write_alphabet(a); }
inline Alphabet alphabet_from_json(const Json& j) { return json_detail::read_alphabet(j); }

inline Json to_json(const Dfa& d) {
  Json j;
  j["alphabet"] = json_detail::write_alphabet(d.alphabet());
  Json states = Json::array();
  for (State q = 0; q < d.size(); ++q) states.push_back(d.name(q));
  j["states"] = states;
  j["start"] = d.name(d.start());
  Json acc = Json::array();
  for (State q = 0; q < d.size(); ++q) {
    if (d.accepting(q)) acc.push_back(d.name(q));
  }
  j["accepting"] = acc;
  Json tr = Json::array();
  for (State q = 0; q < d.size(); ++q) {
    for (Symbol a = 0; a < d.alphabet().size(); ++a) {
      Json t;
      t["from"] = d.name(q);
      t["symbol"] = json_detail::symbol_to_json(d.alphabet(), a);
      t["to"] = d.name(d.next(q, a));
      tr.push_back(t);
    }
  }
  j["transitions"] = tr;
  return j;
}

inline Json to_json(const Nfa& n) {
  Json j;
  j["alphabet"] = json_detail::write_alphabet(n.alphabet());
  Json states = Json::array();
  for (State q = 0; q < n.size(); ++q) states.push_back(n.name(q));
  j["states"] = states;
  Json starts = Json::array();
  for (State s : n.starts()) starts.push_back(n.name(s));
  j["start"] = starts;
  Json acc = Json::array();
  for (State q = 0; q < n.size(); ++q) {
    if (n.accepting(q)) acc.push_back(n.name(q));
  }
  j["accepting"] = acc;
  Json tr = Json::array();
  for (State q = 0; q < n.size(); ++q) {
    for (auto& [a, t] : n.out(q)) {
      Json e;
      e["from"] = n.name(q);
      e["symbol"] = json_detail::symbol_to_json(n.alphabet(), a);
      e["to"] = n.name(t);
      tr.push_back(e);
    }
  }
  j["transitions"] = tr;
  return j;
}

/// Loads a DFA; partial transition tables are completed with a sink.
inline Dfa dfa_from_json(const Json& j) {
  using namespace json_detail;
  Alphabet alpha = read_alphabet(field(j, "alphabet"));
  StateTable st = states_from_json(field(j, "states"));
  if (st.names.empty()) throw FormatError("automaton needs at least one state");
  const Json& start = field(j, "start");
  if (!start.is_string()) throw FormatError("DFA \"start\" must be a single state name");
  Dfa d(alpha, st.names.size(), st.at(start));
  d.set_names(st.names);
  const Json& acc = field(j, "accepting");
  if (!acc.is_array()) throw FormatError("\"accepting\" must be an array");
  for (auto& a : acc) d.set_accepting(st.at(a));
  const Json& tr = field(j, "transitions");
  if (!tr.is_array()) throw FormatError("\"transitions\" must be an array");
  for (auto& t : tr) {
    State from = st.at(field(t, "from"));
    Symbol s = symbol_from_json(alpha, field(t, "symbol"));
    State to = st.at(field(t, "to"));
    if (d.next(from, s) != kNoState && d.next(from, s) != to) {
      throw FormatError("nondeterministic transition from '" + st.names[from] + "' in a DFA");
    }
    d.set_next(from, s, to);
  }
  d.complete();
  return d;
}

inline Nfa nfa_from_json(const Json& j) {
  using namespace json_detail;
  Alphabet alpha = read_alphabet(field(j, "alphabet"));
  StateTable st = states_from_json(field(j, "states"));
  Nfa n(alpha, st.names.size());
  n.set_names(st.names);
  const Json& start = field(j, "start");
  if (start.is_string()) {
    n.add_start(st.at(start));
  } else if (start.is_array()) {
    for (auto& s : start) n.add_start(st.at(s));
  } else {
    throw FormatError("\"start\" must be a name or a list of names");
  }
  for (auto& a : field(j, "accepting")) n.set_accepting(st.at(a));
  for (auto& t : field(j, "transitions")) {
    n.add_transition(st.at(field(t, "from")), symbol_from_json(alpha, field(t, "symbol")), st.at(field(t, "to")));
  }
  return n;
}

/// A DFA file has a single start name; an NFA file a list.
inline std::variant<Dfa, Nfa> automaton_from_json(const Json& j) {
  if (json_detail::field(j, "start").is_array()) return nfa_from_json(j);
  return dfa_from_json(j);
}

}  // namespace autolin
