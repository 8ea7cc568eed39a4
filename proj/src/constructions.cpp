#include "valence/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

namespace {

// `v+`/`v-` symbols of the left or right operand follow the vertex renaming.
Symbol rename_generator(const Symbol& s, const Graph& old, const Graph& fresh,
                        const std::vector<std::size_t>& map) {
  if (s.size() < 2 || (s.back() != '+' && s.back() != '-')) return s;
  auto v = old.find(std::string_view(s).substr(0, s.size() - 1));
  if (!v) return s;
  return fresh.name(map[*v]) + s.back();
}

MonoidWord remap(const MonoidWord& w, const std::vector<std::size_t>& map) {
  MonoidWord out;
  out.reserve(w.size());
  for (auto t : w) out.push_back({static_cast<std::uint32_t>(map[t.vertex]), t.negative});
  return out;
}

ValenceAutomaton sandwich(const ValenceAutomaton& a0, const GraphUnion& u,
                          const std::vector<std::size_t>& map, const Symbol& s) {
  auto a = split_edges(a0);
  ValenceAutomaton k;
  k.graph = u.graph;
  std::string init = "k0";
  while (a.find_state(init)) init += "'";
  for (const auto& q : a.states) k.add_state(q);
  k.finals = a.finals;
  k.initial = k.add_state(init);
  k.add_edge(k.initial, a.initial, {s});
  for (const auto& e : a.edges) {
    Word in;
    if (!e.input.empty()) in = {rename_generator(e.input[0], a.graph, u.graph, map), s};
    k.add_edge(e.from, e.to, std::move(in), remap(e.store, map));
  }
  return k;
}

ValenceAutomaton words_automaton(const WordSet& words) {
  ValenceAutomaton a;
  a.initial = a.add_state("s");
  std::size_t n = 0;
  for (const auto& w : words) {
    if (w.empty()) {
      a.finals[a.initial] = true;
      continue;
    }
    std::size_t prev = a.initial;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto next = a.add_state("w" + std::to_string(n) + "_" + std::to_string(i + 1), i + 1 == w.size());
      a.add_edge(prev, next, {w[i]});
      prev = next;
    }
    ++n;
  }
  return a;
}

std::string vertex_name(const std::string& base, const Graph& g) {
  std::string name;
  for (char c : base) {
    auto u = static_cast<unsigned char>(c);
    name += (std::isalnum(u) || c == '_' || c == '$') ? c : '_';
  }
  std::string out = name;
  for (std::size_t i = 1; g.find(out); ++i) out = name + "_" + std::to_string(i);
  return out;
}

}  // namespace

ValenceGrammar freeproduct_grammar(const ValenceAutomaton& a0, const ValenceAutomaton& a1) {
  auto u = disjoint_union(a0.graph, a1.graph);
  ValenceGrammar g;
  Symbol s = "S";
  g.start = s;
  g.nonterminals = {s};
  g.productions.push_back({s, std::nullopt, sandwich(a0, u, u.left, s)});
  g.productions.push_back({s, std::nullopt, sandwich(a1, u, u.right, s)});
  g.productions.push_back({s, WordSet{Word{}}, std::nullopt});
  return g;
}

ValenceAutomaton grammar_to_valence(const ValenceGrammar& g, bool keep_brackets) {
  std::vector<ValenceAutomaton> rhs;
  const Graph* base = nullptr;
  for (const auto& p : g.productions) {
    if (p.automaton) {
      if (base && !(*base == p.automaton->graph))
        throw Error(ErrorKind::MalformedRHS, "right-hand-side automata use different graphs");
      if (!base) base = &p.automaton->graph;
      rhs.push_back(split_edges(*p.automaton));
    } else if (p.words) {
      rhs.push_back(words_automaton(*p.words));
    } else {
      throw Error(ErrorKind::MalformedRHS, "production for '" + p.lhs + "' has no right-hand side");
    }
  }
  for (const auto& p : g.productions)
    if (!g.is_nonterminal(p.lhs))
      throw Error(ErrorKind::MalformedRHS, "'" + p.lhs + "' is not a declared nonterminal");

  ValenceAutomaton out;
  out.graph = base ? *base : Graph();
  std::vector<std::vector<std::size_t>> state, vertex;
  auto init = out.add_state("init");
  out.initial = init;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const auto& a = rhs[i];
    std::vector<std::size_t> st, vx;
    for (std::size_t q = 0; q < a.states.size(); ++q) {
      st.push_back(out.add_state("P" + std::to_string(i) + "/" + a.states[q], a.finals[q]));
      vx.push_back(out.graph.add_vertex(
          vertex_name("q$P" + std::to_string(i) + "_" + a.states[q], out.graph), false));
    }
    state.push_back(std::move(st));
    vertex.push_back(std::move(vx));
  }
  for (const auto& t : g.terminals()) out.alphabet.add(t);
  Word open, close;
  if (keep_brackets) {
    open = {"["};
    close = {"]"};
    out.alphabet.add("[");
    out.alphabet.add("]");
  }
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (g.productions[i].lhs == g.start) out.add_edge(init, state[i][rhs[i].initial], {});

  // Return points: states entered right after a nonterminal step.
  std::vector<std::pair<std::size_t, std::size_t>> returns;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    for (const auto& e : rhs[i].edges) {
      auto from = state[i][e.from], to = state[i][e.to];
      if (e.input.empty() || !g.is_nonterminal(e.input[0])) {
        out.edges.push_back({from, to, e.input, e.store});
        continue;
      }
      returns.push_back({i, e.to});
      for (std::size_t j = 0; j < rhs.size(); ++j) {
        if (g.productions[j].lhs != e.input[0]) continue;
        auto store = e.store;
        store.push_back({static_cast<std::uint32_t>(vertex[i][e.to]), false});
        out.edges.push_back({from, state[j][rhs[j].initial], open, std::move(store)});
      }
    }
  }
  std::sort(returns.begin(), returns.end());
  returns.erase(std::unique(returns.begin(), returns.end()), returns.end());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    for (std::size_t f = 0; f < rhs[i].states.size(); ++f) {
      if (!rhs[i].finals[f]) continue;
      for (auto [j, q] : returns)
        out.edges.push_back({state[i][f], state[j][q], close,
                             {{static_cast<std::uint32_t>(vertex[j][q]), true}}});
    }
  return out;
}

Embedding bpowers_embedding(const Graph& g, const std::string& p, const std::string& q) {
  Embedding e;
  auto pv = g.find(p), qv = g.find(q);
  if (!pv || !qv || *pv == *qv)
    throw Error(ErrorKind::InvalidArgument, "need two distinct vertices '" + p + "' and '" + q + "'");
  for (auto v : {*pv, *qv})
    if (g.looped(v) || !g.neighbors(v).empty())
      throw Error(ErrorKind::InvalidArgument,
                  "vertex '" + g.name(v) + "' must be unlooped and isolated (a free B factor)");
  e.p = *pv;
  e.q = *qv;
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (v != e.p && v != e.q) rest.push_back(v);
  if (rest.empty())
    throw Error(ErrorKind::TrivialM, "M is trivial, so it has no non-trivial right-invertible element");
  e.graph = g.induced(rest);
  e.vertex_map.assign(g.size(), 0);
  for (std::size_t i = 0; i < rest.size(); ++i) e.vertex_map[rest[i]] = i;
  auto smallest = std::min_element(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return g.name(a) < g.name(b);
  });
  e.m = e.vertex_map[*smallest];
  e.r = e.graph.add_vertex(vertex_name("r", e.graph), false);
  return e;
}

MonoidWord bpowers_apply(const Embedding& e, const MonoidWord& w) {
  MonoidWord out;
  auto r = static_cast<std::uint32_t>(e.r), m = static_cast<std::uint32_t>(e.m);
  for (auto t : w) {
    if (t.vertex == e.p) {
      out.push_back({r, t.negative});
      out.push_back({r, t.negative});
    } else if (t.vertex == e.q) {
      out.push_back({r, t.negative});
      out.push_back({m, t.negative});
      out.push_back({r, t.negative});
    } else {
      out.push_back({static_cast<std::uint32_t>(e.vertex_map[t.vertex]), t.negative});
    }
  }
  return out;
}

ValenceAutomaton bpowers_embed(const ValenceAutomaton& a, const std::string& p, const std::string& q) {
  auto e = bpowers_embedding(a.graph, p, q);
  ValenceAutomaton out = a;
  out.graph = e.graph;
  for (auto& edge : out.edges) edge.store = bpowers_apply(e, edge.store);
  return out;
}

Alphabet b2_alphabet() { return Alphabet({"a1", "A1", "b1", "a2", "A2", "b2"}); }

ValenceAutomaton b2_witness(const Graph& g) {
  auto w = find_c4_p4(g);
  if (!w || w->shape == InducedShape::PPN)
    throw Error(ErrorKind::NotC4P4, "graph has no induced C4 or P4 once loops are dropped");
  // Cycle or path order x-y-z-w is labelled 3-1-2-4.
  const auto v3 = w->vertices[0], v1 = w->vertices[1], v2 = w->vertices[2], v4 = w->vertices[3];
  auto tok = [](std::size_t v, bool neg) { return Token{static_cast<std::uint32_t>(v), neg}; };

  ValenceAutomaton a;
  a.graph = g;
  a.alphabet = b2_alphabet();
  // Component states: o between blocks, a while reading a_i, A while reading barred a_i.
  const std::string names = "oaA";
  std::size_t id[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) id[i][j] = a.add_state(std::string{names[i], names[j]});
  a.initial = id[0][0];
  auto phase = a.add_state("drain", true);
  a.add_edge(id[0][0], phase, {});
  a.add_edge(phase, phase, {}, {tok(v4, true)});
  a.add_edge(phase, phase, {}, {tok(v3, true)});

  struct Step {
    int from, to;
    char kind;  // 'a', 'A', 'b'
  };
  const Step steps[] = {{0, 1, 'a'}, {0, 2, 'A'}, {0, 0, 'b'}, {1, 1, 'a'},
                        {1, 2, 'A'}, {1, 0, 'b'}, {2, 2, 'A'}, {2, 0, 'b'}};
  for (int comp = 0; comp < 2; ++comp) {
    const std::size_t va = comp == 0 ? v1 : v2, vb = comp == 0 ? v4 : v3;
    const std::string n = std::to_string(comp + 1);
    for (int other = 0; other < 3; ++other)
      for (const auto& s : steps) {
        auto from = comp == 0 ? id[s.from][other] : id[other][s.from];
        auto to = comp == 0 ? id[s.to][other] : id[other][s.to];
        switch (s.kind) {
          case 'a': a.add_edge(from, to, {"a" + n}, {tok(va, false)}); break;
          case 'A': a.add_edge(from, to, {"A" + n}, {tok(va, true)}); break;
          default: a.add_edge(from, to, {"b" + n}, {tok(vb, false)}); break;
        }
      }
  }
  return a;
}

bool b2_member(const Word& w) {
  for (const auto& s : w)
    if (!b2_alphabet().contains(s)) return false;
  for (const std::string n : {"1", "2"}) {
    std::size_t ups = 0, downs = 0;
    bool open = false;  // inside a block that has not met its b yet
    for (const auto& s : w) {
      if (s == "a" + n) {
        if (downs) return false;
        ++ups;
        open = true;
      } else if (s == "A" + n) {
        ++downs;
        open = true;
      } else if (s == "b" + n) {
        if (ups != downs) return false;
        ups = downs = 0;
        open = false;
      }
    }
    if (open) return false;
  }
  return true;
}

bool PrioGrammar::is_nonterminal(const Symbol& s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

PrioGrammar to_prio_grammar(const Cfg& g) {
  PrioGrammar out;
  out.nonterminals = g.nonterminals;
  out.start = g.start;
  for (const auto& p : g.productions) out.productions.push_back({p.lhs, word_machine(p.rhs)});
  return out;
}

PrioGrammar to_prio_grammar(const ValenceGrammar& g) {
  PrioGrammar out;
  out.nonterminals = g.nonterminals;
  out.start = g.start;
  for (const auto& p : g.productions) {
    ValenceAutomaton a = p.automaton ? *p.automaton : words_automaton(p.words.value_or(WordSet{}));
    PriorityMachine m;
    for (const auto& q : a.states) m.add_state(q);
    m.finals = a.finals;
    m.initial = a.initial;
    m.alphabet = a.alphabet;
    for (const auto& e : a.edges) {
      if (!e.store.empty())
        throw Error(ErrorKind::InvalidArgument,
                    "right-hand side of '" + p.lhs + "' uses storage; give it as a priority machine");
      m.add_edge(e.from, e.to, e.input);
    }
    out.productions.push_back({p.lhs, std::move(m)});
  }
  return out;
}

PriorityMachine parikh_flatten(const PrioGrammar& g) {
  std::vector<Symbol> nts = g.nonterminals;
  for (const auto& p : g.productions)
    if (std::find(nts.begin(), nts.end(), p.lhs) == nts.end()) nts.push_back(p.lhs);
  if (std::find(nts.begin(), nts.end(), g.start) == nts.end()) nts.push_back(g.start);
  std::map<Symbol, std::size_t> slot;
  std::size_t ell = 0;
  for (const auto& p : g.productions) ell = std::max(ell, p.rhs.counters);
  for (std::size_t i = 0; i < nts.size(); ++i) slot[nts[i]] = ell + i;

  PriorityMachine out;
  out.counters = ell + nts.size();
  auto unit = [&](std::size_t i, std::int64_t x) {
    Vector v(out.counters, 0);
    v[i] = x;
    return v;
  };
  auto init = out.add_state("init");
  auto hub = out.add_state("hub", true);
  out.initial = init;
  out.add_edge(init, hub, {}, 0, unit(slot.at(g.start), 1));
  for (std::size_t j = 0; j < g.productions.size(); ++j) {
    const auto& pr = g.productions[j];
    auto m = split_edges(pr.rhs);
    std::vector<std::size_t> copy(m.states.size());
    for (std::size_t q = 0; q < m.states.size(); ++q)
      copy[q] = out.add_state("r" + std::to_string(j) + "/" + m.states[q]);
    out.add_edge(hub, copy[m.initial], {}, 0, unit(slot.at(pr.lhs), -1));
    for (const auto& e : m.edges) {
      Vector d = e.delta;
      d.resize(out.counters, 0);
      Word in = e.input;
      if (!in.empty() && slot.count(in[0])) {
        d[slot.at(in[0])] += 1;
        in.clear();
      }
      out.add_edge(copy[e.from], copy[e.to], std::move(in), e.ztest, std::move(d));
    }
    for (std::size_t q = 0; q < m.states.size(); ++q)
      if (m.finals[q]) out.add_edge(copy[q], hub, {}, ell);
    for (const auto& x : pr.rhs.alphabet)
      if (!slot.count(x)) out.alphabet.add(x);
  }
  return out;
}

}  // namespace valence
