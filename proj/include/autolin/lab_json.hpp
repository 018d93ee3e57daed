#pragma once

#include "autolin/automata_json.hpp"
#include "autolin/families.hpp"
#include "autolin/learning.hpp"

// JSON and text forms for words, families and learning sessions.

namespace autolin {

/// Words over a plain alphabet are strings; over a convolution alphabet they
/// are arrays of per-track words.
inline Json word_to_json(const Alphabet& a, const Word& w) {
  if (!a.is_convolution()) return a.format(w);
  Json arr = Json::array();
  auto parts = deconvolve(w, a);
  for (std::size_t i = 0; i < parts.size(); ++i) arr.push_back(word_to_json(a.track(i), parts[i]));
  return arr;
}

inline Word word_from_json(const Alphabet& a, const Json& j) {
  try {
    if (!a.is_convolution()) return a.parse(j.get<std::string>());
    if (!j.is_array() || j.size() != a.arity()) throw FormatError("expected an array of " + std::to_string(a.arity()) + " tracks");
    std::vector<Word> parts;
    for (std::size_t i = 0; i < a.arity(); ++i) parts.push_back(word_from_json(a.track(i), j[i]));
    return convolve(parts, a);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("word: ") + e.what());
  } catch (const AlphabetError& e) {
    throw FormatError(std::string("word: ") + e.what());
  }
}

/// Text form: plain words as-is; convolution words as comma-separated tracks.
inline Word word_from_text(const Alphabet& a, const std::string& text) {
  if (!a.is_convolution()) return a.parse(text);
  std::vector<Word> parts;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    std::size_t end = i + 1 == a.arity() ? text.size() : text.find(',', pos);
    if (end == std::string::npos) throw AlphabetError("expected " + std::to_string(a.arity()) + " comma-separated tracks");
    parts.push_back(word_from_text(a.track(i), text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return convolve(parts, a);
}

inline std::string word_to_text(const Alphabet& a, const Word& w) {
  if (!a.is_convolution()) return a.format(w);
  auto parts = deconvolve(w, a);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += word_to_text(a.track(i), parts[i]);
  }
  return out;
}

inline Json to_json(const AutomaticFamily& f) {
  Json j;
  j["index_dfa"] = to_json(f.index_dfa());
  j["member_dfa"] = to_json(f.member_dfa());
  return j;
}

inline AutomaticFamily family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("index_dfa") || !j.contains("member_dfa")) {
    throw FormatError("family JSON needs \"index_dfa\" and \"member_dfa\"");
  }
  Dfa index = dfa_from_json(j["index_dfa"]);
  Dfa member = dfa_from_json(j["member_dfa"]);
  try {
    return AutomaticFamily(std::move(index), std::move(member));
  } catch (const FamilyError& e) {
    throw FormatError(e.what());
  }
}

/// SessionReport schema:
/// {"learner","text","seed","rate","slack","cycles":[{"cycle","datum","hypothesis",
///  "longest","memory_length","device_steps":{name:steps},"fed":[...],"within_budget","fault"}],
///  "last_change","final_hypothesis","converged","correct","budgets_clean"}
inline Json to_json(const SessionReport& r, const Alphabet& datum_alpha, const Alphabet& hyp_alpha,
                    bool include_cycles = true) {
  Json j;
  j["learner"] = r.learner;
  j["text"] = r.text_kind;
  j["seed"] = r.seed;
  j["rate"] = r.rate;
  j["slack"] = r.slack;
  if (include_cycles) {
    Json cs = Json::array();
    for (std::size_t k = 0; k < r.cycles.size(); ++k) {
      const CycleRecord& c = r.cycles[k];
      Json e;
      e["cycle"] = k;
      e["datum"] = word_to_json(datum_alpha, c.datum);
      e["hypothesis"] = word_to_json(hyp_alpha, c.hypothesis);
      e["longest"] = c.longest;
      e["memory_length"] = c.scratch_length();
      Json ds = Json::object();
      for (auto& [name, steps] : c.device_steps) ds[name] = steps;
      e["device_steps"] = ds;
      Json fed = Json::array();
      for (auto& w : c.fed) fed.push_back(datum_alpha.format(w));
      e["fed"] = fed;
      e["within_budget"] = c.within(r.rate, r.slack);
      e["fault"] = c.fault;
      cs.push_back(e);
    }
    j["cycles"] = cs;
  }
  j["last_change"] = r.last_change;
  j["final_hypothesis"] = word_to_json(hyp_alpha, r.final_hypothesis);
  j["converged"] = r.converged;
  j["correct"] = r.correct ? Json(*r.correct) : Json(nullptr);
  j["budgets_clean"] = r.budgets_clean;
  return j;
}

}  // namespace autolin
