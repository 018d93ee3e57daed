#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "autolin/catalog.hpp"
#include "autolin/crossing.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

namespace {

constexpr int kOk = 0, kVerdict = 1, kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

AutomaticRelation load_relation(const std::string& ref) {
  if (starts_with(ref, "fixture:")) {
    std::string n = ref.substr(8);
    if (auto f = fx::function_fixture(n)) return f->relation();
    if (auto r = fx::relation_fixture(n)) return *r;
    throw UsageError("unknown fixture '" + ref + "'");
  }
  try {
    return AutomaticRelation(dfa_from_json(read_json_file(ref)));
  } catch (const AlphabetError& e) {
    throw FormatError(e.what());
  }
}

AutomaticFunction load_function(const std::string& ref) {
  if (starts_with(ref, "fixture:")) {
    if (auto f = fx::function_fixture(ref.substr(8))) return *f;
  }
  return AutomaticFunction::certify(load_relation(ref));
}

TuringMachine load_machine(const std::string& ref) {
  if (starts_with(ref, "machine:")) {
    if (auto m = fx::machine_fixture(ref.substr(8))) return *m;
    throw UsageError("unknown machine '" + ref + "'");
  }
  return tm_from_json(read_json_file(ref));
}

AutomaticFamily load_family(const std::string& ref) {
  for (const char* p : {"family:", "fixture:"}) {
    if (starts_with(ref, p)) {
      if (auto f = fx::family_fixture(ref.substr(std::string(p).size()))) return *f;
      throw UsageError("unknown family '" + ref + "'");
    }
  }
  return family_from_json(read_json_file(ref));
}

Word parse_word(const Alphabet& a, const std::string& text) {
  try {
    return word_from_text(a, text);
  } catch (const AlphabetError& e) {
    throw UsageError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct Output {
  bool pretty = false;
  std::ostringstream text;
  void json(const Json& j) {
    if (!pretty) std::cout << dump_json(j);
  }
  template <class T>
  Output& operator<<(const T& v) {
    if (pretty) std::cout << v;
    return *this;
  }
};

Json case_json(const Alphabet& in, const Alphabet& out, const CompileCase& c) {
  Json j;
  j["x"] = in.format(c.x);
  j["expected"] = c.expected ? Json(out.format(*c.expected)) : Json(nullptr);
  if (c.produced) {
    std::string s;
    for (auto& t : *c.produced) s += t;
    j["produced"] = s;
  } else {
    j["produced"] = nullptr;
  }
  j["outcome"] = to_string(c.outcome);
  j["steps"] = c.steps;
  j["bound"] = c.bound;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"autolin: automatic functions, one-tape machines and automatic learners"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--pretty", out.pretty, "human-readable summaries instead of JSON");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized texts");

  std::string function, machine, family, input, out_path, trace_path, index, learner, text_kind = "canonical", target,
      report_path, script;
  std::size_t maxlen = 8, budget = 1000, rate = 4, validate_len = 5, b = 3, index_len = 3, bmax = 5, cycles = 600;
  std::optional<std::size_t> visits, learn_rate, learn_slack;
  bool include_trace = false;

  auto* c_compile = app.add_subcommand("compile", "compile an automatic function to a one-tape machine");
  c_compile->add_option("--function", function, "fixture:<name> or graph JSON")->required();
  c_compile->add_option("--out", out_path, "machine JSON output file");

  auto* c_verify = app.add_subcommand("verify-compile", "check a compiled machine against evaluation");
  c_verify->add_option("--function", function, "fixture:<name> or graph JSON")->required();
  c_verify->add_option("--maxlen", maxlen, "check all inputs up to this length");

  auto* c_run = app.add_subcommand("run-tm", "run a deterministic machine");
  c_run->add_option("--machine", machine, "machine:<name> or machine JSON")->required();
  c_run->add_option("--input", input, "input word")->required();
  c_run->add_option("--budget", budget, "step budget");
  c_run->add_option("--trace", trace_path, "write the run with its trace to this file");

  auto* c_extract = app.add_subcommand("extract", "extract the automatic function of a linear-time machine");
  c_extract->add_option("--machine", machine, "machine:<name> or machine JSON")->required();
  c_extract->add_option("--rate", rate, "linear-time rate");
  c_extract->add_option("--visits", visits, "per-cell visit bound of the normalized machine");
  c_extract->add_option("--validate-len", validate_len, "validate against the machine up to this length");
  c_extract->add_option("--out", out_path, "graph JSON output file");

  auto* c_check = app.add_subcommand("check-function", "decide whether a relation is a function");
  c_check->add_option("--relation,--function", function, "fixture:<name> or graph JSON")->required();

  auto* c_eval = app.add_subcommand("eval", "evaluate an automatic function");
  c_eval->add_option("--function", function, "fixture:<name> or graph JSON")->required();
  c_eval->add_option("--input", input, "input word")->required();

  auto* c_family = app.add_subcommand("family", "automatic family analysis");
  c_family->require_subcommand(1);
  auto* f_lang = c_family->add_subcommand("language", "DFA for one member language");
  f_lang->add_option("--family", family, "family:<name> or family JSON")->required();
  f_lang->add_option("--index", index, "index word (tracks separated by commas)")->required();
  f_lang->add_option("--out", out_path, "DFA JSON output file");
  auto* f_tell = c_family->add_subcommand("telltale", "indices certified at tell-tale level b");
  f_tell->add_option("--family", family, "family:<name> or family JSON")->required();
  f_tell->add_option("--b", b, "level");
  f_tell->add_option("--out", out_path, "DFA JSON output file");
  auto* f_scan = c_family->add_subcommand("scan", "least certified tell-tale level per index");
  f_scan->add_option("--family", family, "family:<name> or family JSON")->required();
  f_scan->add_option("--index-len", index_len, "longest index scanned");
  f_scan->add_option("--bmax", bmax, "largest level tried");
  auto* f_valid = c_family->add_subcommand("validate", "check that every index names a nonempty language");
  f_valid->add_option("--family", family, "family:<name> or family JSON")->required();

  auto* c_learn = app.add_subcommand("learn", "run a learner on a text");
  c_learn->add_option("--learner", learner, "learner name, e.g. twotape:missing-string")->required();
  c_learn->add_option("--family", family, "family:<name> or family JSON (default: the learner's family)");
  c_learn->add_option("--text", text_kind, "canonical | fat | scripted | shuffled");
  c_learn->add_option("--target", target, "target index (tracks separated by commas)")->required();
  c_learn->add_option("--script", script, "comma-separated opening words of a scripted text");
  c_learn->add_option("--cycles", cycles, "number of cycles");
  c_learn->add_option("--rate", learn_rate, "device steps per cycle ≤ rate·(n+1)");
  c_learn->add_option("--slack", learn_slack, "memory length ≤ n + slack");
  c_learn->add_option("--report", report_path, "write the full session report here");
  c_learn->add_flag("--trace", include_trace, "include per-cycle records on standard output");

  auto* c_fix = app.add_subcommand("fixtures", "built-in fixtures");
  c_fix->require_subcommand(1);
  auto* x_list = c_fix->add_subcommand("list", "list fixture names");
  auto* x_dump = c_fix->add_subcommand("dump", "print a fixture as JSON");
  std::string fixture_name;
  x_dump->add_option("name", fixture_name, "fixture name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (c_compile->parsed()) {
      AutomaticFunction f = load_function(function);
      TuringMachine m = compile(f);
      Json j = to_json(m);
      if (out_path.empty()) {
        std::cout << dump_json(j);
      } else {
        write_file(out_path, dump_json(j));
        out.json({{"states", m.size()}, {"tape_symbols", m.tape_alphabet_size()}, {"slack", f.slack()}, {"out", out_path}});
        out << "compiled: " << m.size() << " states, " << m.tape_alphabet_size() << " tape symbols -> " << out_path << "\n";
      }
      return kOk;
    }
    if (c_verify->parsed()) {
      AutomaticFunction f = load_function(function);
      CompileReport r = verify_compile(f, maxlen);
      Json j{{"pass", r.pass},         {"slack", r.slack},           {"maxlen", r.maxlen},
             {"inputs_checked", r.inputs_checked}, {"max_steps", r.max_steps}, {"step_bound", 2 * (r.maxlen + r.slack + 2)},
             {"max_visits", r.max_visits}, {"tm_states", r.tm_states}, {"tape_symbols", r.tape_symbols}};
      Json fails = Json::array();
      for (auto& c : r.failures) fails.push_back(case_json(f.input_alphabet(), f.output_alphabet(), c));
      j["failures"] = fails;
      out.json(j);
      out << (r.pass ? "PASS" : "FAIL") << ": " << r.inputs_checked << " inputs, max steps " << r.max_steps << " (bound "
          << 2 * (r.maxlen + r.slack + 2) << " at |x|=" << r.maxlen << "), max visits " << r.max_visits << "\n";
      return r.pass ? kOk : kVerdict;
    }
    if (c_run->parsed()) {
      TuringMachine m = load_machine(machine);
      Word x = parse_word(m.input_alphabet(), input);
      RunResult r = run_deterministic(m, x, budget, !trace_path.empty());
      if (!trace_path.empty()) write_file(trace_path, dump_json(to_json(r, m)));
      RunResult brief = r;
      brief.trace.clear();
      out.json(to_json(brief, m));
      out << to_string(r.outcome) << " after " << r.steps << " steps";
      if (r.output) {
        std::string s;
        for (auto& t : *r.output) s += t;
        out << ", output '" << s << "'";
      }
      out << "\n";
      return r.accepted() ? kOk : kVerdict;
    }
    if (c_extract->parsed()) {
      TuringMachine m = load_machine(machine);
      ExtractReport r = extract_automatic(m, rate, visits, validate_len);
      Json j{{"ok", r.ok}, {"message", r.message}, {"linear_time", r.linear_time.pass}, {"visit_bound", r.visit_bound},
             {"a_states", r.a_states}, {"b_states", r.b_states}};
      if (r.function) {
        j["graph_states"] = r.function->graph().size();
        j["slack"] = r.function->slack();
      }
      Json mm = Json::array();
      for (auto& e : r.mismatches) {
        Json x;
        x["x"] = m.input_alphabet().format(e.x);
        std::string s;
        if (e.machine) for (auto& t : *e.machine) s += t;
        x["machine"] = e.machine ? Json(s) : Json(nullptr);
        x["extracted"] = e.extracted && r.function ? Json(r.function->output_alphabet().format(*e.extracted)) : Json(nullptr);
        mm.push_back(x);
      }
      j["mismatches"] = mm;
      if (r.function && !out_path.empty()) write_file(out_path, dump_json(to_json(r.function->graph())));
      out.json(j);
      out << (r.ok ? "extracted" : "extraction failed") << (r.message.empty() ? "" : ": " + r.message) << "\n";
      if (r.function) out << "graph: " << r.function->graph().size() << " states, slack " << r.function->slack() << "\n";
      return r.ok ? kOk : kVerdict;
    }
    if (c_check->parsed()) {
      AutomaticRelation rel = load_relation(function);
      auto v = check_functional(rel);
      if (auto* cert = std::get_if<FunctionalityCertificate>(&v)) {
        std::size_t c = length_bound(rel);
        out.json({{"functional", true}, {"product_states", cert->product_states}, {"slack", c}});
        out << "functional (slack " << c << ")\n";
        return kOk;
      }
      auto& w = std::get<FunctionalityViolation>(v);
      const Alphabet &in = rel.track(0), &o = rel.track(1);
      out.json({{"functional", false}, {"x", in.format(w.x)}, {"y", o.format(w.y)}, {"y2", o.format(w.y2)}});
      out << "not functional: '" << in.format(w.x) << "' -> '" << o.format(w.y) << "' and '" << o.format(w.y2) << "'\n";
      return kVerdict;
    }
    if (c_eval->parsed()) {
      AutomaticFunction f = load_function(function);
      auto y = evaluate(f, parse_word(f.input_alphabet(), input));
      if (!y) {
        std::cerr << "input outside the domain\n";
        return kVerdict;
      }
      std::cout << f.output_alphabet().format(*y) << "\n";
      return kOk;
    }
    if (f_lang->parsed()) {
      AutomaticFamily fam = load_family(family);
      Word e = parse_word(fam.index_alphabet(), index);
      if (!fam.is_index(e)) throw UsageError("'" + index + "' is not an index of the family");
      std::string j = dump_json(to_json(language_of(fam, e)));
      if (out_path.empty()) {
        std::cout << j;
      } else {
        write_file(out_path, j);
      }
      return kOk;
    }
    if (f_tell->parsed()) {
      AutomaticFamily fam = load_family(family);
      Dfa level = telltale_level_set(fam, b);
      std::string j = dump_json(to_json(level));
      if (out_path.empty()) {
        std::cout << j;
      } else {
        write_file(out_path, j);
      }
      return kOk;
    }
    if (f_scan->parsed()) {
      AutomaticFamily fam = load_family(family);
      TelltaleReport r = learnability_scan(fam, index_len, bmax);
      Json entries = Json::array();
      for (auto& e : r.entries) {
        Json x;
        x["index"] = word_to_json(fam.index_alphabet(), e.index);
        x["level"] = e.level ? Json(*e.level) : Json(nullptr);
        if (!e.level) {
          x["blocker"] = e.blocker ? word_to_json(fam.index_alphabet(), *e.blocker) : Json(nullptr);
          x["blocker_checked"] = e.blocker_checked;
        }
        entries.push_back(x);
        out << word_to_text(fam.index_alphabet(), e.index) << ": "
            << (e.level ? "certified at b=" + std::to_string(*e.level) : std::string("uncertified")) << "\n";
      }
      out.json({{"index_len", r.index_len}, {"b_max", r.b_max}, {"all_certified", r.all_certified()}, {"entries", entries}});
      return r.all_certified() ? kOk : kVerdict;
    }
    if (f_valid->parsed()) {
      AutomaticFamily fam = load_family(family);
      NonemptyReport r = validate_nonempty(fam);
      auto w = [&](const std::optional<Word>& x) { return x ? word_to_json(fam.index_alphabet(), *x) : Json(nullptr); };
      out.json({{"pass", r.pass}, {"empty_index", w(r.empty_index)}, {"stray_index", w(r.stray_index)}});
      out << (r.pass ? "every index names a nonempty language" : "some index names the empty language") << "\n";
      return r.pass ? kOk : kVerdict;
    }
    if (c_learn->parsed()) {
      std::string name = starts_with(learner, "learner:") ? learner.substr(8) : learner;
      auto l = fx::make_learner(name);
      if (!l) throw UsageError("unknown learner '" + learner + "'");
      if (family.empty()) family = "family:" + fx::learner_family(name).value_or("");
      AutomaticFamily fam = load_family(family);
      auto kind = text_kind_from_string(text_kind);
      if (!kind) throw UsageError("unknown text kind '" + text_kind + "'");
      Word e = parse_word(fam.index_alphabet(), target);
      if (!fam.is_index(e)) throw UsageError("'" + target + "' is not an index of the family");
      std::vector<Word> sc;
      for (std::size_t pos = 0; !script.empty() && pos <= script.size();) {
        std::size_t end = std::min(script.find(',', pos), script.size());
        sc.push_back(parse_word(fam.word_alphabet(), script.substr(pos, end - pos)));
        pos = end + 1;
      }
      LearnTable t = check_learns(*l, fam, {e}, *kind, cycles, learn_rate.value_or(l->default_rate),
                                  learn_slack.value_or(l->default_slack), seed, sc);
      const SessionReport& s = t.rows[0].session;
      if (!report_path.empty()) write_file(report_path, dump_json(to_json(s, fam.word_alphabet(), fam.index_alphabet())));
      Json j = to_json(s, fam.word_alphabet(), fam.index_alphabet(), include_trace);
      j["target"] = word_to_json(fam.index_alphabet(), e);
      j["pass"] = t.pass();
      out.json(j);
      out << s.learner << " on " << s.text_kind << " text, " << cycles << " cycles: final "
          << word_to_text(fam.index_alphabet(), s.final_hypothesis) << " (last change at cycle " << s.last_change
          << "), " << (s.converged ? "converged" : "not converged") << ", "
          << (s.correct.value_or(false) ? "correct" : "incorrect") << ", budgets "
          << (s.budgets_clean ? "clean" : "violated") << "\n";
      return t.pass() ? kOk : kVerdict;
    }
    if (x_list->parsed()) {
      Json arr = Json::array();
      for (auto& e : fx::catalog()) {
        arr.push_back({{"name", e.name}, {"kind", e.kind}, {"summary", e.summary}});
        out << e.name << "  (" << e.kind << ") " << e.summary << "\n";
      }
      out.json(arr);
      return kOk;
    }
    if (x_dump->parsed()) {
      auto j = fx::dump_fixture(fixture_name);
      if (!j) throw UsageError("unknown fixture '" + fixture_name + "'");
      std::cout << dump_json(*j);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FunctionalityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdict;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
