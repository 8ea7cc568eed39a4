#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/cli.hpp"
#include "valence/constructions.hpp"
#include "valence/error.hpp"
#include "valence/grammar.hpp"
#include "valence/graph.hpp"
#include "valence/parikh.hpp"
#include "valence/petri.hpp"
#include "valence/simulator.hpp"
#include "valence/word.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
namespace v = valence;

namespace {

std::vector<std::string> words_out(const v::WordSet& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(v::format_word(w));
  return out;
}

py::dict parikh_out(const v::ParikhVector& p) {
  py::dict d;
  for (const auto& [s, n] : p) d[py::str(s)] = n;
  return d;
}

py::dict result_out(const v::BoundedResult& r) {
  return py::dict("verdict"_a = r.nonempty() ? "nonempty" : "empty-up-to-bound",
                  "witness"_a = r.nonempty() ? py::object(py::str(v::format_word(r.witness))) : py::none(),
                  "explored"_a = r.explored, "complete"_a = r.complete);
}

}  // namespace

PYBIND11_MODULE(_valence, m) {
  m.doc() = "Valence automata over graph monoids";

  static py::exception<v::Error> error(m, "ValenceError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const v::Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<v::Graph>(m, "Graph")
      .def_static("parse", &v::parse_graph, "text"_a)
      .def_static("load", &v::load_graph, "path"_a)
      .def_property_readonly("vertices", &v::Graph::names)
      .def("looped", [](const v::Graph& g, const std::string& name) { return g.looped(g.index(name)); })
      .def("adjacent", [](const v::Graph& g, const std::string& a, const std::string& b) {
        return g.adjacent(g.index(a), g.index(b));
      })
      .def("__len__", &v::Graph::size)
      .def("__str__", &v::format_graph);

  py::class_<v::ValenceAutomaton>(m, "Automaton")
      .def_static("parse", [](const std::string& text) { return v::parse_automaton(text); }, "text"_a)
      .def_static("load", &v::load_automaton, "path"_a)
      .def_property_readonly("states", [](const v::ValenceAutomaton& a) { return a.states; })
      .def_property_readonly("graph", [](const v::ValenceAutomaton& a) { return a.graph; })
      .def("__str__", &v::format_automaton);

  py::class_<v::Cfg>(m, "Grammar")
      .def_static("parse", &v::parse_cfg, "text"_a)
      .def_static("load", &v::load_cfg, "path"_a)
      .def_property_readonly("start", [](const v::Cfg& g) { return g.start; })
      .def("is_cnf", &v::is_cnf)
      .def("to_cnf", &v::to_cnf)
      .def("__str__", &v::format_cfg);

  py::class_<v::PetriNet>(m, "PetriNet")
      .def_static("parse", &v::parse_petri, "text"_a)
      .def_static("load", &v::load_petri, "path"_a)
      .def_property_readonly("dim", [](const v::PetriNet& n) { return n.dim; })
      .def("__str__", &v::format_petri);

  py::class_<v::PriorityMachine>(m, "PriorityMachine")
      .def_static("parse", &v::parse_machine, "text"_a)
      .def_property_readonly("counters", [](const v::PriorityMachine& pm) { return pm.counters; })
      .def_property_readonly("states", [](const v::PriorityMachine& pm) { return pm.states; })
      .def("__str__", &v::format_machine);

  m.def("classify", [](const v::Graph& g) {
    auto c = v::classify(g);
    py::dict d("verdict"_a = std::string(v::to_string(c.verdict)));
    if (c.verdict == v::Verdict::Decidable) d["expr"] = v::format_expr(c.expr);
    if (c.witness) {
      std::vector<std::string> names;
      for (auto x : c.witness->vertices) names.push_back(g.name(x));
      d["shape"] = std::string(v::to_string(c.witness->shape));
      d["witness"] = names;
    }
    return d;
  }, "graph"_a);
  m.def("is_transitive_forest", &v::is_transitive_forest, "graph"_a);
  m.def("is_ppn_free", &v::is_ppn_free, "graph"_a);
  m.def("decompose_dec", [](const v::Graph& g) { return v::format_expr(v::decompose_dec(g)); }, "graph"_a);
  m.def("expr_to_graph", [](const std::string& e) { return v::expr_to_graph(v::parse_expr(e)); }, "expr"_a);

  m.def("is_identity", [](const v::Graph& g, const std::string& w) {
    return v::is_identity(g, v::parse_monoid_word(w, g));
  }, "graph"_a, "word"_a);
  m.def("is_identity_oracle", [](const v::Graph& g, const std::string& w, std::size_t step_bound) {
    return std::string(v::to_string(v::is_identity_oracle(g, v::parse_monoid_word(w, g), step_bound)));
  }, "graph"_a, "word"_a, "step_bound"_a = 1000000);

  m.def("accepts", [](const v::ValenceAutomaton& a, const std::string& w, std::size_t run_bound,
                      std::size_t store_bound) {
    return std::string(v::to_string(v::accepts_bounded(a, v::parse_word(w, a.alphabet), run_bound, store_bound)));
  }, "automaton"_a, "word"_a, "run_bound"_a = 200, "store_bound"_a = 32);
  m.def("enumerate", [](const v::ValenceAutomaton& a, std::size_t max_len, std::size_t run_bound,
                        std::size_t store_bound) {
    auto e = v::enumerate_bounded(a, max_len, run_bound, store_bound);
    return py::make_tuple(words_out(e.words), e.complete);
  }, "automaton"_a, "max_len"_a, "run_bound"_a = 200, "store_bound"_a = 32);
  m.def("emptiness", [](const v::ValenceAutomaton& a, std::size_t run_bound, std::size_t store_bound) {
    return result_out(v::emptiness_bounded(a, run_bound, store_bound));
  }, "automaton"_a, "run_bound"_a = 200, "store_bound"_a = 32);
  m.def("product_intersection", &v::product_intersection, "a"_a, "b"_a);

  m.def("derive_bounded", [](const v::Cfg& g, std::optional<std::size_t> k, std::size_t max_len) {
    return words_out(v::derive_bounded(g, k, max_len));
  }, "grammar"_a, "k"_a = py::none(), "max_len"_a = 6);
  m.def("build_G_ell", &v::build_G_ell, "grammar"_a, "ell"_a);

  m.def("parikh", [](const std::string& w) { return parikh_out(v::parikh(v::parse_symbols(w))); }, "word"_a);

  m.def("grammar_to_valence", [](const v::Cfg& g) { return v::grammar_to_valence(v::to_valence_grammar(g)); },
        "grammar"_a);
  m.def("b2_witness", &v::b2_witness, "graph"_a);
  m.def("b2_member", [](const std::string& w) { return v::b2_member(v::parse_word(w, v::b2_alphabet())); },
        "word"_a);

  m.def("build_simulator", [](const v::Cfg& g, std::size_t k, const v::PetriNet& n) {
    auto h = v::build_simulator(g, k, n);
    return py::dict("machine"_a = h.machine, "dim"_a = h.dim, "aux"_a = h.aux);
  }, "grammar"_a, "k"_a, "net"_a);
  m.def("simulator_parikh", [](const v::Cfg& g, std::size_t k, const v::PetriNet& n, const v::Vector& mu,
                               const v::Vector& mu2, std::size_t max_len) {
    auto h = v::build_simulator(g, k, n);
    auto r = v::simulator_parikh(h, n, mu, {mu2}, max_len);
    std::vector<py::dict> out;
    for (const auto& p : r.per_target[0]) out.push_back(parikh_out(p));
    return out;
  }, "grammar"_a, "k"_a, "net"_a, "mu"_a, "mu2"_a, "max_len"_a = 6);
  m.def("intersection_parikh", [](const v::Cfg& g, std::size_t k, const v::PetriNet& n, const v::Vector& mu,
                                  const v::Vector& mu2, std::size_t max_len) {
    std::vector<py::dict> out;
    for (const auto& p : v::intersection_parikh(v::derive_bounded(g, k, max_len), n, mu, mu2, 1000000))
      out.push_back(parikh_out(p));
    return out;
  }, "grammar"_a, "k"_a, "net"_a, "mu"_a, "mu2"_a, "max_len"_a = 6);
  m.def("gcheck", [](const std::filesystem::path& recipe, std::size_t step_bound, std::int64_t counter_bound) {
    return result_out(v::g_emptiness(v::load_recipe(recipe), step_bound, counter_bound));
  }, "recipe"_a, "step_bound"_a = 200, "counter_bound"_a = 16);

  m.def("dispatch", [](const std::vector<std::string>& args) {
    auto r = v::dispatch(args);
    return py::make_tuple(r.exit_code, r.out, r.err);
  }, "args"_a);
}
