#pragma once

#include "autolin/automata_json.hpp"
#include "autolin/tm.hpp"

namespace autolin {

inline Json to_json(const TuringMachine& m) {
  Json j;
  Json states = Json::array();
  for (State q = 0; q < m.size(); ++q) states.push_back(m.name(q));
  j["states"] = states;
  j["input_alphabet"] = m.input_alphabet().tokens();
  j["output_alphabet"] = m.output_alphabet().tokens();
  j["tape_alphabet"] = m.tape_tokens();
  j["start"] = m.name(m.start());
  Json acc = Json::array();
  for (State q = 0; q < m.size(); ++q) {
    if (m.accepting(q)) acc.push_back(m.name(q));
  }
  j["accepting"] = acc;
  Json tr = Json::array();
  for (State q = 0; q < m.size(); ++q) {
    for (TapeSymbol s = 0; s < m.tape_alphabet_size(); ++s) {
      for (auto& t : m.transitions(q, s)) {
        Json e;
        e["from"] = m.name(q);
        e["read"] = m.token(s);
        e["to"] = m.name(t.to);
        e["write"] = m.token(t.write);
        e["dir"] = t.dir == Dir::L ? "L" : "R";
        tr.push_back(e);
      }
    }
  }
  j["transitions"] = tr;
  return j;
}

inline TuringMachine tm_from_json(const Json& j) {
  using json_detail::field;
  auto strings = [](const Json& a, const char* what) {
    if (!a.is_array()) throw FormatError(std::string("\"") + what + "\" must be an array");
    std::vector<std::string> out;
    for (auto& s : a) {
      if (!s.is_string()) throw FormatError(std::string("\"") + what + "\" entries must be strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  try {
    Alphabet input = Alphabet::plain(strings(field(j, "input_alphabet"), "input_alphabet"));
    Alphabet output = j.contains("output_alphabet")
                          ? Alphabet::plain(strings(j.at("output_alphabet"), "output_alphabet"))
                          : input;
    TuringMachine m(input, output, strings(field(j, "tape_alphabet"), "tape_alphabet"));
    auto names = strings(field(j, "states"), "states");
    if (names.empty()) throw FormatError("machine needs at least one state");
    for (auto& n : names) m.add_state(n);
    auto state = [&](const Json& s) {
      if (!s.is_string()) throw FormatError("state reference must be a string");
      auto q = m.find_state(s.get<std::string>());
      if (!q) throw FormatError("undeclared state '" + s.get<std::string>() + "'");
      return *q;
    };
    auto sym = [&](const Json& s) {
      if (!s.is_string()) throw FormatError("tape symbol must be a string");
      auto t = m.find_symbol(s.get<std::string>());
      if (!t) throw FormatError("undeclared tape symbol '" + s.get<std::string>() + "'");
      return *t;
    };
    m.set_start(state(field(j, "start")));
    std::vector<bool> acc(m.size(), false);
    for (auto& a : strings(field(j, "accepting"), "accepting")) acc[state(Json(a))] = true;
    for (State q = 0; q < m.size(); ++q) m.set_accepting(q, acc[q]);
    for (auto& t : field(j, "transitions")) {
      std::string d = field(t, "dir").get<std::string>();
      if (d != "L" && d != "R") throw FormatError("direction must be \"L\" or \"R\"");
      m.add_transition(state(field(t, "from")), sym(field(t, "read")), state(field(t, "to")), sym(field(t, "write")),
                       d == "L" ? Dir::L : Dir::R);
    }
    return m;
  } catch (const FormatError&) {
    throw;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("machine JSON: ") + e.what());
  } catch (const Error& e) {
    throw FormatError(std::string("invalid machine: ") + e.what());
  }
}

inline Json to_json(const RunResult& r, const TuringMachine& m) {
  Json j;
  j["outcome"] = to_string(r.outcome);
  if (r.output) {
    std::string out;
    for (auto& t : *r.output) out += t;
    j["output"] = out;
    j["output_tokens"] = *r.output;
  } else {
    j["output"] = nullptr;
  }
  j["steps"] = r.steps;
  j["visits"] = r.visits;
  j["excursion"] = r.excursion;
  if (!r.trace.empty()) {
    Json tr = Json::array();
    for (auto& e : r.trace) {
      tr.push_back({{"step", e.step},
                    {"state", m.name(e.state)},
                    {"head", e.head},
                    {"read", m.token(e.read)},
                    {"write", m.token(e.write)},
                    {"dir", e.dir == Dir::L ? "L" : "R"}});
    }
    j["trace"] = tr;
  }
  return j;
}

}  // namespace autolin
