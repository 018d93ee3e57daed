#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autolin/compile.hpp"
#include "autolin/fixtures.hpp"
#include "autolin/lab_json.hpp"
#include "autolin/learners.hpp"
#include "autolin/tm_json.hpp"

// Named built-ins: "fixture:<f>" (functions and relations), "machine:<m>",
// "family:<fam>", "learner:<l>".

namespace autolin::fixtures {

struct CatalogEntry {
  std::string name;
  std::string kind;  // function | relation | machine | family | learner
  std::string summary;
};

inline std::optional<AutomaticRelation> relation_fixture(const std::string& n) {
  if (n == "equal-length") return equal_length();
  if (n == "prefix-extension") return prefix_extension();
  return std::nullopt;
}

inline std::optional<AutomaticFunction> function_fixture(const std::string& n) {
  for (auto& e : function_fixtures()) {
    if (e.name == n) return e.make();
  }
  return std::nullopt;
}

inline std::optional<TuringMachine> machine_fixture(const std::string& n) {
  if (n == "zigzag-identity") return zigzag_identity();
  if (n == "sweep-identity") return sweep_identity();
  const std::string pre = "compiled-";
  if (n.rfind(pre, 0) == 0) {
    if (auto f = function_fixture(n.substr(pre.size()))) return compile(*f);
  }
  return std::nullopt;
}

inline std::optional<AutomaticFamily> family_fixture(const std::string& n) {
  for (auto& e : family_fixtures()) {
    if (e.name == n) return e.make();
  }
  return std::nullopt;
}

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (auto& e : function_fixtures()) out.push_back({"fixture:" + e.name, "function", "automatic function"});
  out.push_back({"fixture:equal-length", "relation", "pairs of equal length; not a function"});
  out.push_back({"fixture:prefix-extension", "relation", "x related to every extension of x; not a function"});
  out.push_back({"machine:zigzag-identity", "machine", "identity in quadratic time"});
  out.push_back({"machine:sweep-identity", "machine", "identity in one sweep"});
  for (auto& e : function_fixtures()) {
    out.push_back({"machine:compiled-" + e.name, "machine", "compiled fixture:" + e.name});
  }
  for (auto& e : family_fixtures()) out.push_back({"family:" + e.name, "family", "automatic family"});
  for (auto& n : learner_names()) {
    out.push_back({"learner:" + n, "learner", "learner for family:" + learner_family(n).value_or("?")});
  }
  return out;
}

inline std::string strip_prefix(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

/// JSON dump of a catalog entry; nullopt for unknown names.
inline std::optional<Json> dump_fixture(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string kind = name.substr(0, colon), n = name.substr(colon + 1);
  if (kind == "fixture") {
    if (auto f = function_fixture(n)) return to_json(f->graph());
    if (auto r = relation_fixture(n)) return to_json(r->graph());
  } else if (kind == "machine") {
    if (auto m = machine_fixture(n)) return to_json(*m);
  } else if (kind == "family") {
    if (auto f = family_fixture(n)) return to_json(*f);
  } else if (kind == "learner") {
    auto l = make_learner(n);
    if (!l) return std::nullopt;
    Json j;
    j["name"] = n;
    j["family"] = learner_family(n).value_or("");
    j["default_rate"] = l->default_rate;
    j["default_slack"] = l->default_slack;
    std::string base = n.substr(n.find(':') == std::string::npos ? 0 : n.find(':') + 1);
    if (auto m = automatic_learner(base)) {
      j["kind"] = n == base ? "automatic" : "device";
      j["memory_alphabet"] = alphabet_to_json(m->memory_alphabet);
      j["initial_memory"] = word_to_json(m->memory_alphabet, m->initial_memory);
      j["memory_slack"] = m->memory_slack;
      j["update"] = to_json(m->update.graph());
    } else {
      j["kind"] = "device";
    }
    return j;
  }
  return std::nullopt;
}

}  // namespace autolin::fixtures
