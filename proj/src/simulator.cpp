#include "valence/simulator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "text.hpp"
#include "valence/constructions.hpp"
#include "valence/error.hpp"

namespace valence {

namespace {

// Counters [0, from) keep their place, the rest move up by `gap`.
Vector widen(const Vector& v, std::size_t from, std::size_t gap) {
  Vector out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(from));
  out.resize(from + gap, 0);
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(from), v.end());
  return out;
}

// Counters below the d global ones.
std::size_t low(const SimulatorHandle& h) { return h.machine.counters - h.dim; }

SimulatorHandle pad_aux(const SimulatorHandle& h, std::size_t want) {
  const std::size_t have = low(h);
  if (have == want) return h;
  SimulatorHandle out = h;
  std::size_t gap = want - have;
  out.machine.counters += gap;
  for (auto& e : out.machine.edges) e.delta = widen(e.delta, have, gap);
  out.dims.insert(out.dims.begin() + static_cast<std::ptrdiff_t>(have), gap, 0);
  return out;
}

std::set<Symbol> productive(const Cfg& g) {
  std::set<Symbol> ok;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (ok.count(p.lhs)) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(),
                      [&](const Symbol& s) { return !g.is_nonterminal(s) || ok.count(s); })) {
        ok.insert(p.lhs);
        changed = true;
      }
    }
  }
  return ok;
}

SimulatorHandle regular_base(const ValenceAutomaton& nfa0, const PetriNet& n) {
  for (const auto& e : nfa0.edges)
    if (!e.store.empty())
      throw Error(ErrorKind::InvalidArgument, "the regular language must be given without storage");
  auto nfa = split_edges(nfa0);
  SimulatorHandle h;
  h.dim = n.dim;
  h.aux = 0;
  auto& m = h.machine;
  m.counters = n.dim;
  for (std::size_t i = 0; i < n.dim; ++i) h.dims.push_back(std::uint32_t{1} << i);
  for (const auto& q : nfa.states) m.add_state(q);
  std::vector<std::size_t> finals;
  for (std::size_t q = 0; q < nfa.states.size(); ++q)
    if (nfa.finals[q]) finals.push_back(q);
  h.source = nfa.initial;
  if (finals.size() == 1) {
    h.target = finals[0];
  } else {
    std::string name = "accept";
    while (nfa.find_state(name)) name += "'";
    h.target = m.add_state(name);
    for (auto f : finals) m.add_edge(f, h.target, {});
  }
  for (const auto& e : nfa.edges) {
    if (e.input.empty()) {
      m.add_edge(e.from, e.to, {});
      continue;
    }
    for (const auto& t : n.transitions)
      if (t.label && *t.label == e.input[0]) m.add_edge(e.from, e.to, e.input, 0, t.delta);
  }
  for (const auto& t : n.transitions)
    if (!t.label)
      for (std::size_t q = 0; q < m.states.size(); ++q) m.add_edge(q, q, {}, 0, t.delta);
  for (const auto& x : nfa.alphabet) m.alphabet.add(x);
  m.initial = h.source;
  m.finals[h.target] = true;
  return h;
}

ValenceAutomaton word_nfa(const Word& w) {
  ValenceAutomaton a;
  a.initial = a.add_state("w0", w.empty());
  std::size_t prev = a.initial;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto next = a.add_state("w" + std::to_string(i + 1), i + 1 == w.size());
    a.add_edge(prev, next, {w[i]});
    prev = next;
  }
  return a;
}

class Builder {
 public:
  Builder(const Cfg& g, const PetriNet& n) : g_(g), n_(n) {}

  SimulatorHandle build(const Symbol& start, std::size_t k) {
    std::string key = start + "#" + std::to_string(k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto h = assemble(start, k);
    memo_.emplace(key, h);
    return h;
  }

 private:
  SimulatorHandle word(const Word& w) {
    std::string key = "word:" + format_word(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto h = regular_base(word_nfa(w), n_);
    memo_.emplace(key, h);
    return h;
  }

  SimulatorHandle assemble(const Symbol& start, std::size_t k) {
    auto dec = decompose_finite_index(with_start(g_, start), k - 1);
    auto live = productive(dec.indexed);
    Cfg lin;
    lin.start = dec.linear.start;
    lin.nonterminals = dec.linear.nonterminals;
    for (const auto& p : dec.linear.productions)
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
            return !dec.indexed.is_nonterminal(s) || live.count(s);
          }))
        lin.add(p.lhs, p.rhs);
    lin.refresh_terminals();
    lin = to_linear_normal_form(lin);

    // Sub-simulators for every symbol the linear grammar can emit.
    std::map<Symbol, SimulatorHandle> subs;
    for (const auto& p : lin.productions)
      for (const auto& s : p.rhs) {
        if (lin.is_nonterminal(s) || subs.count(s)) continue;
        auto it = dec.sigma.find(s);
        if (it == dec.sigma.end()) {
          subs.emplace(s, word({s}));
        } else {
          auto at = s.rfind('@');
          std::size_t i = std::stoul(s.substr(at + 1));
          subs.emplace(s, build(s.substr(0, at), i + 1));
        }
      }
    std::size_t ell = 0;
    for (const auto& [s, h] : subs) ell = std::max(ell, low(h));
    for (auto& [s, h] : subs) h = pad_aux(h, ell);

    const std::size_t d = n_.dim;
    const std::size_t fwd = ell, bwd = ell + d, glob = ell + 2 * d;
    SimulatorHandle out;
    out.dim = d;
    out.aux = ell;
    auto& m = out.machine;
    m.counters = ell + 3 * d;
    out.dims.assign(ell, 0);
    for (const auto& [s, h] : subs)
      for (std::size_t i = 0; i < ell; ++i) out.dims[i] |= h.dims[i];
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t i = 0; i < d; ++i) out.dims.push_back(std::uint32_t{1} << i);
    auto unit = [&](std::initializer_list<std::pair<std::size_t, std::int64_t>> entries) {
      Vector v(m.counters, 0);
      for (auto [i, x] : entries) v[i] += x;
      return v;
    };

    auto p = m.add_state("src");
    auto p2 = m.add_state("src'");
    std::map<Symbol, std::size_t> nt;
    for (const auto& a : lin.nonterminals) nt[a] = m.add_state(a);
    auto drain = m.add_state("drain");
    auto tgt = m.add_state("tgt", true);
    out.source = p;
    out.target = tgt;
    m.initial = p;
    for (std::size_t i = 0; i < d; ++i) {
      m.add_edge(p, p, {}, 0, unit({{glob + i, -1}, {fwd + i, 1}}));
      m.add_edge(p2, p2, {}, 0, unit({{glob + i, 1}, {bwd + i, 1}}));
      m.add_edge(drain, drain, {}, 0, unit({{fwd + i, -1}, {bwd + i, -1}}));
    }
    m.add_edge(p, p2, {});
    m.add_edge(p2, nt.at(lin.start), {});
    m.add_edge(drain, tgt, {}, ell + 2 * d);

    // Sub counters [aux ell | top d] land on [aux | fwd] or [aux | bwd].
    auto lift = [&](const Vector& v, std::size_t top) {
      Vector out_v(m.counters, 0);
      for (std::size_t i = 0; i < ell; ++i) out_v[i] = v[i];
      for (std::size_t i = 0; i < d; ++i) out_v[top + i] = v[ell + i];
      return out_v;
    };
    auto forward_copy = [&](const SimulatorHandle& s, const std::string& tag, std::size_t from,
                            std::size_t to) {
      std::vector<std::size_t> map(s.machine.states.size());
      for (std::size_t q = 0; q < map.size(); ++q) map[q] = m.add_state(tag + "/" + s.machine.states[q]);
      m.add_edge(from, map[s.source], {});
      for (const auto& e : s.machine.edges)
        if (e.ztest <= ell) m.add_edge(map[e.from], map[e.to], e.input, e.ztest, lift(e.delta, fwd));
      m.add_edge(map[s.target], to, {}, ell);
    };
    auto backward_copy = [&](const SimulatorHandle& s, const std::string& tag, std::size_t from,
                             std::size_t to) {
      std::vector<std::size_t> map(s.machine.states.size());
      for (std::size_t q = 0; q < map.size(); ++q) map[q] = m.add_state(tag + "/" + s.machine.states[q]);
      m.add_edge(from, map[s.target], {});
      std::size_t tmp = 0;
      for (const auto& e : s.machine.edges) {
        if (e.ztest > ell) continue;
        Vector back = lift(e.delta, bwd);
        for (auto& x : back) x = -x;
        if (e.ztest == 0) {
          m.add_edge(map[e.to], map[e.from], e.input, 0, std::move(back));
        } else {
          // The zero test guarded the state before the step, so it follows the undo.
          auto t = m.add_state(tag + "/~" + std::to_string(tmp++));
          m.add_edge(map[e.to], t, e.input, 0, std::move(back));
          m.add_edge(t, map[e.from], {}, e.ztest);
        }
      }
      m.add_edge(map[s.source], to, {}, ell);
    };

    for (std::size_t j = 0; j < lin.productions.size(); ++j) {
      const auto& pr = lin.productions[j];
      auto a = nt.at(pr.lhs);
      if (pr.rhs.empty()) {
        m.add_edge(a, drain, {});
        continue;
      }
      std::size_t b = 0;
      while (!lin.is_nonterminal(pr.rhs[b])) ++b;
      auto target = nt.at(pr.rhs[b]);
      std::optional<Symbol> x1 = b ? std::optional(pr.rhs[0]) : std::nullopt;
      std::optional<Symbol> x2 = b + 1 < pr.rhs.size() ? std::optional(pr.rhs[b + 1]) : std::nullopt;
      std::string tag = "P" + std::to_string(j);
      std::size_t cur = a;
      if (x1) {
        auto mid = x2 ? m.add_state(tag + "|") : target;
        forward_copy(subs.at(*x1), tag + "f", cur, mid);
        cur = mid;
      }
      if (x2) backward_copy(subs.at(*x2), tag + "b", cur, target);
      if (!x1 && !x2) m.add_edge(a, target, {});
    }
    for (const auto& t : g_.terminals) m.alphabet.add(t);
    return out;
  }

  const Cfg& g_;
  const PetriNet& n_;
  std::map<std::string, SimulatorHandle> memo_;
};

}  // namespace

SimulatorHandle build_simulator(const ValenceAutomaton& nfa, const PetriNet& n) {
  return regular_base(nfa, n);
}

SimulatorHandle build_simulator(const Cfg& g, std::size_t k, const PetriNet& n) {
  if (!is_cnf(g)) throw Error(ErrorKind::NotCNF, "the simulator needs a CNF grammar");
  if (k == 0)
    throw Error(ErrorKind::IndexTooSmall,
                "index 0 is the regular case; pass a finite automaton instead");
  Builder b(g, n);
  return b.build(g.start, k);
}

namespace {

// Every counter below the global block holds part of a marking of N along
// the simulated run. Such a marking is at most μ plus the growth of the reads
// before it, and at most μ′ plus the shrinkage of the reads after it. Silent
// transitions of N void the second bound. The global block only moves
// between μ and μ′.
Vector simulator_caps(const SimulatorHandle& h, const PetriNet& net, const Vector& mu,
                      const std::vector<Vector>& targets, std::size_t max_len) {
  const std::size_t d = h.dim, k = h.machine.counters;
  if (net.dim != d) throw Error(ErrorKind::DimensionMismatch, "simulator and net disagree on d");
  if (mu.size() != d)
    throw Error(ErrorKind::DimensionMismatch, "markings must have the net's dimension");
  Vector top_to(d, 0), inc(d, 0), dec(d, 0);
  for (const auto& t : targets) {
    if (t.size() != d) throw Error(ErrorKind::DimensionMismatch, "markings must have the net's dimension");
    for (std::size_t i = 0; i < d; ++i) top_to[i] = std::max(top_to[i], t[i]);
  }
  std::vector<bool> silent(d, false);
  std::int64_t step = 0;
  for (const auto& t : net.transitions)
    for (std::size_t i = 0; i < d; ++i) {
      inc[i] = std::max(inc[i], t.delta[i]);
      dec[i] = std::max(dec[i], -t.delta[i]);
      step = std::max(step, std::abs(t.delta[i]));
      if (!t.label && t.delta[i] != 0) silent[i] = true;
    }
  const auto len = static_cast<std::int64_t>(max_len);
  Vector dim_cap(d);
  for (std::size_t i = 0; i < d; ++i)
    dim_cap[i] = silent[i] ? std::max(mu[i], top_to[i]) + len * step
                           : std::min(mu[i] + len * inc[i], top_to[i] + len * dec[i]);
  Vector caps(k, 0);
  for (std::size_t c = 0; c + d < k; ++c)
    for (std::size_t i = 0; i < d; ++i)
      if (h.dims.at(c) >> i & 1) caps[c] = std::max(caps[c], dim_cap[i]);
  // Globals only move by transfers, except in the regular base case where
  // they are the net's places themselves.
  for (std::size_t i = 0; i < d; ++i)
    caps[k - d + i] = std::max(mu[i], top_to[i]);
  if (k == d)
    for (std::size_t i = 0; i < d; ++i) caps[i] = std::max(caps[i], dim_cap[i]);
  return caps;
}

}  // namespace

ParikhReach simulator_parikh(const SimulatorHandle& h, const PetriNet& net, const Vector& mu,
                             const std::vector<Vector>& targets, std::size_t max_len) {
  const std::size_t d = h.dim, k = h.machine.counters;
  ReachQuery q;
  q.caps = simulator_caps(h, net, mu, targets, max_len);
  q.from_state = h.source;
  q.to_states = {h.target};
  q.from = Vector(k - d, 0);
  q.from.insert(q.from.end(), mu.begin(), mu.end());
  for (const auto& t : targets) {
    Vector full(k - d, 0);
    full.insert(full.end(), t.begin(), t.end());
    q.to.push_back(std::move(full));
  }
  q.max_ztest = k - d;
  q.max_len = max_len;
  return prio_parikh_reach(h.machine, q);
}

ParikhSet intersection_parikh(const WordSet& k_words, const PetriNet& n, const Vector& mu,
                              const Vector& mu2, std::size_t step_bound) {
  std::size_t max_len = 0;
  for (const auto& w : k_words) max_len = std::max(max_len, w.size());
  auto net_words = petri_enumerate(n, mu, mu2, max_len, step_bound).words;
  ParikhSet out;
  for (const auto& w : k_words)
    if (net_words.count(w)) out.insert(parikh(w));
  return out;
}

PriorityMachine intersection_machine(const SimulatorHandle& h, const PetriNet& n) {
  if (h.dim != n.dim) throw Error(ErrorKind::DimensionMismatch, "simulator and net disagree on d");
  const std::size_t k = h.machine.counters, d = n.dim;
  PriorityMachine m;
  m.counters = k;
  m.alphabet = h.machine.alphabet;
  for (const auto& s : h.machine.states) m.add_state(s);
  for (const auto& e : h.machine.edges)
    if (e.ztest <= k - d) m.edges.push_back(e);
  auto top = [&](const Vector& mu, int sign) {
    Vector v(k, 0);
    for (std::size_t i = 0; i < d; ++i) v[k - d + i] = sign * mu[i];
    return v;
  };
  auto fresh = [&](std::string name) {
    while (m.find_state(name)) name += "'";
    return name;
  };
  auto q0 = m.add_state(fresh("start"));
  auto f = m.add_state(fresh("accept"), true);
  m.initial = q0;
  m.add_edge(q0, h.source, {}, 0, top(n.initial, 1));
  for (const auto& mu : n.finals) m.add_edge(h.target, f, {}, 0, top(mu, -1));
  return m;
}

PriorityMachine intersection_machine(const Cfg& g, std::size_t k, const PetriNet& n) {
  return intersection_machine(build_simulator(g, k, n), n);
}

ParikhReach intersection_machine_parikh(const SimulatorHandle& h, const PetriNet& n,
                                        std::size_t max_len) {
  auto m = intersection_machine(h, n);
  ReachQuery q;
  q.caps = simulator_caps(h, n, n.initial, n.finals, max_len);
  q.from_state = m.initial;
  q.from.assign(m.counters, 0);
  q.to = {Vector(m.counters, 0)};
  for (std::size_t s = 0; s < m.states.size(); ++s)
    if (m.finals[s]) q.to_states.push_back(s);
  q.max_ztest = m.counters;
  q.max_len = max_len;
  return prio_parikh_reach(m, q);
}

// ---------------------------------------------------------------------------
// Recipes

const RecipeNode& Recipe::node(const std::string& name) const {
  for (const auto& n : nodes)
    if (n.name == name) return n;
  throw Error(ErrorKind::InvalidArgument, "recipe has no node '" + name + "'");
}

Recipe parse_recipe(std::string_view source, const std::filesystem::path& base_dir) {
  Recipe r;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() ? base_dir / path : path;
  };
  for (const auto& line : text::logical_lines(source)) {
    auto tok = text::split_ws(line.content);
    const auto& head = tok[0];
    auto attrs = text::parse_attributes(std::string_view(line.content).substr(head.size()), line.number);
    auto need = [&](const std::string& key) {
      auto v = attrs.get(key);
      if (!v) text::fail(line.number, head + " needs " + key + "=");
      return *v;
    };
    if (head == "root") {
      if (attrs.positional.size() != 1) text::fail(line.number, "root takes one node name");
      r.root = attrs.positional[0];
      continue;
    }
    if (attrs.positional.size() != 1) text::fail(line.number, head + " takes one node name");
    RecipeNode n;
    n.name = attrs.positional[0];
    for (const auto& other : r.nodes)
      if (other.name == n.name) text::fail(line.number, "duplicate node '" + n.name + "'");
    if (auto h = attrs.get("h")) n.h = parse_morphism(*h);
    if (head == "leaf") {
      n.kind = RecipeNode::Kind::Leaf;
      n.net = load_petri(resolve(need("net")));
      if (auto c = attrs.get("cfg")) {
        n.cfg = load_cfg(resolve(*c));
        auto idx = need("index");
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
          text::fail(line.number, "bad index '" + idx + "'");
        n.index = std::stoul(idx);
      } else if (auto a = attrs.get("nfa")) {
        n.nfa = load_automaton(resolve(*a));
      } else {
        text::fail(line.number, "leaf needs cfg= or nfa=");
      }
    } else if (head == "alg") {
      n.kind = RecipeNode::Kind::Alg;
      n.start = need("start");
      for (const auto& rule : text::split(need("rules"), ',')) {
        auto colon = rule.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == rule.size())
          text::fail(line.number, "rule '" + rule + "' must be A:child");
        n.rules.push_back({rule.substr(0, colon), rule.substr(colon + 1)});
      }
    } else if (head == "homsli") {
      n.kind = RecipeNode::Kind::HomSli;
      n.child = need("child");
      n.sl = load_semilinear(resolve(need("sl")));
    } else {
      text::fail(line.number, "unknown recipe line '" + head + "'");
    }
    r.nodes.push_back(std::move(n));
  }
  if (r.root.empty()) throw Error(ErrorKind::Parse, "recipe needs a 'root' line");
  r.node(r.root);
  return r;
}

Recipe load_recipe(const std::filesystem::path& path) {
  return parse_recipe(text::read_file(path), path.parent_path());
}

namespace {

PriorityMachine compile_node(const Recipe& r, const std::string& name, std::set<std::string>& active) {
  if (!active.insert(name).second)
    throw Error(ErrorKind::InvalidArgument, "recipe node '" + name + "' refers to itself");
  const auto& n = r.node(name);
  PriorityMachine out;
  switch (n.kind) {
    case RecipeNode::Kind::Leaf: {
      auto sim = n.cfg ? build_simulator(*n.cfg, n.index, *n.net) : build_simulator(*n.nfa, *n.net);
      out = apply_morphism(intersection_machine(sim, *n.net), n.h);
      break;
    }
    case RecipeNode::Kind::Alg: {
      PrioGrammar g;
      g.start = n.start;
      for (const auto& [a, child] : n.rules)
        if (!g.is_nonterminal(a)) g.nonterminals.push_back(a);
      if (!g.is_nonterminal(g.start))
        throw Error(ErrorKind::InvalidArgument, "alg node '" + name + "' has no rule for its start");
      for (const auto& [a, child] : n.rules) g.productions.push_back({a, compile_node(r, child, active)});
      out = apply_morphism(parikh_flatten(g), n.h);
      break;
    }
    case RecipeNode::Kind::HomSli:
      out = presburger_close(compile_node(r, n.child, active), *n.sl, n.h);
      break;
  }
  active.erase(name);
  return out;
}

}  // namespace

PriorityMachine compile_recipe(const Recipe& r) {
  std::set<std::string> active;
  return compile_node(r, r.root, active);
}

BoundedResult g_emptiness(const Recipe& r, std::size_t step_bound, std::int64_t counter_bound) {
  return prio_emptiness_bounded(compile_recipe(r), step_bound, counter_bound);
}

}  // namespace valence
