#include "valence/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

#include "valence/automaton.hpp"
#include "valence/constructions.hpp"
#include "valence/error.hpp"
#include "valence/grammar.hpp"
#include "valence/graph.hpp"
#include "valence/parikh.hpp"
#include "valence/petri.hpp"
#include "valence/simulator.hpp"
#include "valence/word.hpp"

namespace valence {

namespace {

// Verdict first, then key: value fields, then free lines (words, objects).
struct Report {
  std::string verdict;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> lines;
  // In doc mode the free lines become one quoted list under this key.
  std::string lines_key;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void flag(std::string key, bool value) { add(std::move(key), value ? "true" : "false"); }
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render_text(const Report& r) {
  std::string out;
  if (!r.verdict.empty()) out += r.verdict + "\n";
  for (const auto& l : r.lines) out += l + "\n";
  for (const auto& [k, v] : r.fields) out += k + ": " + v + "\n";
  return out;
}

std::string render_doc(const Report& r) {
  std::string out;
  if (!r.verdict.empty()) out += "verdict: " + r.verdict + "\n";
  for (const auto& [k, v] : r.fields) out += k + ": " + v + "\n";
  if (!r.lines_key.empty()) {
    out += r.lines_key + ":";
    for (const auto& l : r.lines) out += " " + quote(l);
    out += "\n";
  }
  return out;
}

std::vector<std::string> object_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct Bounds {
  std::size_t run_bound = 200;
  std::size_t store_bound = 32;
  std::size_t max_len = 6;
};

void echo(Report& r, const Bounds& b, bool with_len) {
  r.add("run-bound", b.run_bound);
  r.add("store-bound", b.store_bound);
  if (with_len) r.add("max-len", b.max_len);
}

// Objects built by `construct` go to stdout, or to --output with a summary.
Report object_report(const std::string& kind, const std::string& text,
                     std::vector<std::pair<std::string, std::string>> stats,
                     const std::string& output) {
  Report r;
  r.add("object", kind);
  for (auto& s : stats) r.fields.push_back(std::move(s));
  if (output.empty()) {
    r.lines = object_lines(text);
    r.lines_key = "text";
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + output);
    out << text;
    r.add("output", output);
  }
  return r;
}

Report automaton_object(const ValenceAutomaton& a, const std::string& output) {
  return object_report("automaton", format_automaton(a),
                       {{"states", std::to_string(a.states.size())},
                        {"edges", std::to_string(a.edges.size())},
                        {"vertices", std::to_string(a.graph.size())}},
                       output);
}

Report machine_object(const PriorityMachine& m, const std::string& output) {
  return object_report("machine", format_machine(m),
                       {{"states", std::to_string(m.states.size())},
                        {"edges", std::to_string(m.edges.size())},
                        {"counters", std::to_string(m.counters)}},
                       output);
}

std::string witness_text(const InducedWitness& w, const Graph& g) {
  std::string out(to_string(w.shape));
  for (auto v : w.vertices) out += " " + g.name(v);
  return out;
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Graph monoid valence automata toolkit", "valence"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "doc"}))
      ->capture_default_str();

  std::function<Report()> run;
  Bounds b;
  auto bound_options = [&](CLI::App* sub, bool with_len) {
    sub->add_option("--run-bound", b.run_bound, "Maximum number of edge applications")
        ->capture_default_str();
    sub->add_option("--store-bound", b.store_bound, "Maximum reduced storage length")
        ->capture_default_str();
    if (with_len) sub->add_option("--max-len", b.max_len, "Maximum word length")->capture_default_str();
  };

  std::string path, path2, word_text, output, morphism_text, p_name, q_name, cfg_path, nfa_path;
  std::size_t index = 0, ell = 0, step_bound = 200;
  std::int64_t counter_bound = 16;
  bool keep_brackets = false, graphs = false;

  auto* classify_cmd = app.add_subcommand("classify", "Decidability verdict for a graph");
  classify_cmd->add_option("graph", path)->required();
  classify_cmd->callback([&] {
    run = [&] {
      auto g = load_graph(path);
      auto c = classify(g);
      Report r;
      r.verdict = std::string(to_string(c.verdict));
      r.add("vertices", g.size());
      if (c.verdict == Verdict::Decidable) r.add("expr", format_expr(c.expr));
      if (c.witness) r.add("witness", witness_text(*c.witness, g));
      return r;
    };
  });

  auto* word_cmd = app.add_subcommand("word", "Word problem in the graph monoid");
  word_cmd->add_option("graph", path)->required();
  word_cmd->add_option("word", word_text, "Tokens such as 'v+ w-'; '-' is empty")->required();
  word_cmd->callback([&] {
    run = [&] {
      auto g = load_graph(path);
      auto w = parse_monoid_word(word_text, g);
      Report r;
      r.verdict = is_identity(g, w) ? "identity" : "not-identity";
      r.add("length", w.size());
      r.add("normal-form", format_monoid_word(canonical(g, w), g));
      return r;
    };
  });

  auto* accept_cmd = app.add_subcommand("accept", "Bounded membership");
  accept_cmd->add_option("automaton", path)->required();
  accept_cmd->add_option("word", word_text, "Input word; '-' is empty")->required();
  bound_options(accept_cmd, false);
  accept_cmd->callback([&] {
    run = [&] {
      auto a = load_automaton(path);
      auto w = parse_word(word_text, a.alphabet);
      Report r;
      r.verdict = std::string(to_string(accepts_bounded(a, w, b.run_bound, b.store_bound)));
      r.add("word", quote(format_word(w)));
      echo(r, b, false);
      return r;
    };
  });

  auto* empty_cmd = app.add_subcommand("empty", "Bounded emptiness");
  empty_cmd->add_option("automaton", path)->required();
  bound_options(empty_cmd, false);
  empty_cmd->callback([&] {
    run = [&] {
      auto res = emptiness_bounded(load_automaton(path), b.run_bound, b.store_bound);
      Report r;
      r.verdict = res.nonempty() ? "nonempty" : "empty-up-to-bound";
      if (res.nonempty()) r.add("witness", quote(format_word(res.witness)));
      r.add("explored", res.explored);
      r.flag("complete", res.complete);
      echo(r, b, false);
      return r;
    };
  });

  auto* enum_cmd = app.add_subcommand("enum", "Bounded enumeration, shortest words first");
  enum_cmd->add_option("automaton", path)->required();
  bound_options(enum_cmd, true);
  enum_cmd->callback([&] {
    run = [&] {
      auto e = enumerate_bounded(load_automaton(path), b.max_len, b.run_bound, b.store_bound);
      Report r;
      for (const auto& w : e.words) r.lines.push_back(format_word(w));
      r.lines_key = "words";
      r.add("count", e.words.size());
      r.flag("complete", e.complete);
      echo(r, b, true);
      return r;
    };
  });

  auto* construct_cmd = app.add_subcommand("construct", "Build an object and print it");
  construct_cmd->require_subcommand(1);
  construct_cmd->add_option("-o,--output", output, "Write the object to this file");

  auto* algbb = construct_cmd->add_subcommand("algbb", "Grammar to automaton over B*...*B*M");
  algbb->add_option("grammar", path)->required();
  algbb->add_flag("--keep-brackets", keep_brackets, "Read [ and ] on opening and closing steps");
  algbb->callback([&] {
    run = [&] { return automaton_object(grammar_to_valence(load_valence_grammar(path), keep_brackets), output); };
  });

  auto* freeprod = construct_cmd->add_subcommand("freeprod", "Grammar for the free product's identity language");
  freeprod->add_option("first", path)->required();
  freeprod->add_option("second", path2)->required();
  freeprod->add_flag("--graphs", graphs, "Inputs are graphs; use their identity automata");
  freeprod->callback([&] {
    run = [&] {
      auto side = [&](const std::string& p) {
        return graphs ? identity_automaton(load_graph(p)) : load_automaton(p);
      };
      auto g = freeproduct_grammar(side(path), side(path2));
      return object_report("grammar", format_valence_grammar(g),
                           {{"productions", std::to_string(g.productions.size())}}, output);
    };
  });

  auto* b2 = construct_cmd->add_subcommand("b2", "B2 witness automaton over a C4/P4 graph");
  b2->add_option("graph", path)->required();
  b2->callback([&] { run = [&] { return automaton_object(b2_witness(load_graph(path)), output); }; });

  auto* sim = construct_cmd->add_subcommand("simulator", "Simulator for K and a Petri net");
  sim->add_option("net", path)->required();
  auto* cfg_opt = sim->add_option("--cfg", cfg_path, "CNF grammar for K");
  sim->add_option("--index", index, "Index bound k >= 1")->needs(cfg_opt);
  sim->add_option("--nfa", nfa_path, "Finite automaton for regular K")->excludes(cfg_opt);
  sim->callback([&] {
    run = [&] {
      auto n = load_petri(path);
      SimulatorHandle h;
      if (!cfg_path.empty()) h = build_simulator(load_cfg(cfg_path), index, n);
      else if (!nfa_path.empty()) h = build_simulator(load_automaton(nfa_path), n);
      else throw Error(ErrorKind::InvalidArgument, "either --cfg with --index or --nfa is required");
      auto r = machine_object(h.machine, output);
      r.add("dim", h.dim);
      r.add("aux", h.aux);
      return r;
    };
  });

  auto* gell = construct_cmd->add_subcommand("gell", "Index-bounded grammar G^[l]");
  gell->add_option("grammar", path)->required();
  gell->add_option("--ell", ell, "Level l")->required();
  gell->callback([&] {
    run = [&] {
      auto g = build_G_ell(load_cfg(path), ell);
      return object_report("cfg", format_cfg(g),
                           {{"nonterminals", std::to_string(g.nonterminals.size())},
                            {"productions", std::to_string(g.productions.size())}},
                           output);
    };
  });

  auto* flatten = construct_cmd->add_subcommand("flatten", "Parikh-equivalent priority machine for a grammar");
  flatten->add_option("grammar", path)->required();
  flatten->callback([&] {
    run = [&] { return machine_object(parikh_flatten(to_prio_grammar(load_valence_grammar(path))), output); };
  });

  auto* homsli = construct_cmd->add_subcommand("homsli", "h(L(a) with Parikh image in S)");
  homsli->add_option("automaton", path)->required();
  homsli->add_option("semilinear", path2)->required();
  homsli->add_option("--morphism", morphism_text, "Such as 'a:xy,b:-'");
  homsli->callback([&] {
    run = [&] {
      auto h = morphism_text.empty() ? Morphism{} : parse_morphism(morphism_text);
      return automaton_object(homsli_automaton(load_automaton(path), load_semilinear(path2), h), output);
    };
  });

  auto* embed = construct_cmd->add_subcommand("embed", "Merge two B vertices into one");
  embed->add_option("automaton", path)->required();
  embed->add_option("--p", p_name, "First B vertex")->required();
  embed->add_option("--q", q_name, "Second B vertex")->required();
  embed->callback([&] {
    run = [&] { return automaton_object(bpowers_embed(load_automaton(path), p_name, q_name), output); };
  });

  auto* gcheck = app.add_subcommand("gcheck", "Bounded emptiness of a recipe");
  gcheck->add_option("recipe", path)->required();
  gcheck->add_option("--step-bound", step_bound, "Maximum machine steps")->capture_default_str();
  gcheck->add_option("--counter-bound", counter_bound, "Maximum counter value")->capture_default_str();
  gcheck->callback([&] {
    run = [&] {
      auto res = g_emptiness(load_recipe(path), step_bound, counter_bound);
      Report r;
      r.verdict = res.nonempty() ? "nonempty" : "empty-up-to-bound";
      if (res.nonempty()) r.add("witness", quote(format_word(res.witness)));
      r.add("explored", res.explored);
      r.flag("complete", res.complete);
      r.add("step-bound", step_bound);
      r.add("counter-bound", std::to_string(counter_bound));
      return r;
    };
  });

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help, printed for the innermost subcommand
      std::ostringstream out, err;
      app.exit(e, out, err);
      result.out = out.str();
      return result;
    }
    result.exit_code = 2;
    result.err = std::string("usage: ") + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    // Callbacks only install `run`, but keep load failures mapped anyway.
    result.exit_code = 2;
    result.err = std::string(e.what()) + "\n";
    return result;
  }
  if (!run) {
    result.exit_code = 2;
    result.err = "usage: no command given\n";
    return result;
  }
  try {
    auto r = run();
    result.out = format == "doc" ? render_doc(r) : render_text(r);
  } catch (const Error& e) {
    result.exit_code = 2;
    result.err = std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.err = std::string("internal error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace valence
