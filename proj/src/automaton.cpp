#include "valence/automaton.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "search_util.hpp"
#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

std::size_t ValenceAutomaton::add_state(const std::string& name, bool final) {
  states.push_back(name);
  finals.push_back(final);
  return states.size() - 1;
}

std::size_t ValenceAutomaton::add_fresh_state(const std::string& base, bool final) {
  std::string name = base;
  for (std::size_t i = 1; find_state(name); ++i) name = base + "~" + std::to_string(i);
  return add_state(name, final);
}

std::optional<std::size_t> ValenceAutomaton::find_state(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

void ValenceAutomaton::add_edge(std::size_t from, std::size_t to, Word input, MonoidWord store) {
  for (const auto& s : input) alphabet.add(s);
  edges.push_back({from, to, std::move(input), std::move(store)});
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct PendingEdge {
  std::size_t line;
  std::string from, to, input, store;
};

// Gathers the lines of a `graph { ... }` block starting at lines[i].
std::string take_graph_block(const std::vector<text::Line>& lines, std::size_t& i) {
  const auto& first = lines[i].content;
  auto open = first.find('{');
  auto rest = text::trim(std::string_view(first).substr(open + 1));
  std::string body;
  if (auto close = rest.find('}'); close != std::string_view::npos) {
    for (const auto& part : text::split(rest.substr(0, close), ';'))
      if (!part.empty()) body += part + "\n";
    return body;
  }
  if (!rest.empty()) body += std::string(rest) + "\n";
  for (++i; i < lines.size(); ++i) {
    if (lines[i].content == "}") return body;
    body += lines[i].content + "\n";
  }
  text::fail(lines.back().number, "unterminated graph block");
}

}  // namespace

ValenceAutomaton parse_automaton(std::string_view source, const std::filesystem::path& base_dir) {
  ValenceAutomaton a;
  auto lines = text::logical_lines(source);
  std::vector<std::string> final_names;
  std::optional<std::string> init;
  std::optional<Alphabet> declared;
  std::vector<PendingEdge> pending;
  bool have_states = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    std::string_view c = line.content;
    if (text::starts_with(c, "states:")) {
      for (const auto& s : text::split_ws(c.substr(7))) {
        if (a.find_state(s)) text::fail(line.number, "duplicate state '" + s + "'");
        a.add_state(s);
      }
      have_states = true;
    } else if (text::starts_with(c, "init:")) {
      auto tok = text::split_ws(c.substr(5));
      if (tok.size() != 1) text::fail(line.number, "init takes exactly one state");
      init = tok[0];
    } else if (text::starts_with(c, "final:")) {
      for (const auto& s : text::split_ws(c.substr(6)))
        if (s != "-") final_names.push_back(s);
    } else if (text::starts_with(c, "alphabet:")) {
      declared = Alphabet(text::split_ws(c.substr(9)));
    } else if (text::starts_with(c, "graph") && c.find('{') != std::string_view::npos &&
               text::trim(c.substr(5, c.find('{') - 5)).empty()) {
      a.graph = parse_graph(take_graph_block(lines, i));
    } else if (text::starts_with(c, "graph:")) {
      auto path = std::filesystem::path(std::string(text::trim(c.substr(6))));
      if (path.is_relative()) path = base_dir / path;
      a.graph = load_graph(path);
    } else if (text::starts_with(c, "edge ") || c == "edge") {
      auto attrs = text::parse_attributes(c.substr(4), line.number);
      if (attrs.positional.size() != 2) text::fail(line.number, "edge needs <from> <to>");
      pending.push_back({line.number, attrs.positional[0], attrs.positional[1],
                         attrs.get("in").value_or("-"), attrs.get("m").value_or("-")});
    } else {
      text::fail(line.number, "unrecognised line '" + line.content + "'");
    }
  }
  if (!have_states) throw Error(ErrorKind::Parse, "missing 'states:' line");
  if (!init) throw Error(ErrorKind::Parse, "missing 'init:' line");
  auto state = [&](const std::string& name, std::size_t line) {
    auto q = a.find_state(name);
    if (!q) text::fail(line, "undeclared state '" + name + "'");
    return *q;
  };
  a.initial = state(*init, 0);
  for (const auto& f : final_names) a.finals[state(f, 0)] = true;
  if (declared) a.alphabet = *declared;
  for (const auto& e : pending) {
    Word input = declared ? parse_word(e.input, *declared) : parse_symbols(e.input);
    MonoidWord store;
    try {
      store = parse_monoid_word(e.store, a.graph);
    } catch (const Error& err) {
      text::fail(e.line, err.what());
    }
    a.add_edge(state(e.from, e.line), state(e.to, e.line), std::move(input), std::move(store));
  }
  return a;
}

ValenceAutomaton load_automaton(const std::filesystem::path& path) {
  return parse_automaton(text::read_file(path), path.parent_path());
}

namespace {

std::string join_ws(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i];
  return out;
}

std::string quoted_word(const Word& w) { return w.empty() ? "-" : join_ws(w); }

}  // namespace

std::string format_automaton(const ValenceAutomaton& a) {
  std::string out = "states: " + join_ws(a.states) + "\n";
  out += "init: " + a.states[a.initial] + "\n";
  std::vector<std::string> finals;
  for (std::size_t q = 0; q < a.states.size(); ++q)
    if (a.finals[q]) finals.push_back(a.states[q]);
  out += "final:" + (finals.empty() ? std::string() : " " + join_ws(finals)) + "\n";
  out += "alphabet:" + (a.alphabet.empty() ? std::string() : " " + join_ws(a.alphabet.symbols())) +
         "\n";
  out += "graph {\n";
  for (const auto& line : text::logical_lines(format_graph(a.graph))) out += "  " + line.content + "\n";
  out += "}\n";
  for (const auto& e : a.edges)
    out += "edge " + a.states[e.from] + " " + a.states[e.to] + " in=\"" + quoted_word(e.input) +
           "\" m=\"" + format_monoid_word(e.store, a.graph) + "\"\n";
  return out;
}

ValenceAutomaton split_edges(const ValenceAutomaton& a) {
  ValenceAutomaton out;
  out.alphabet = a.alphabet;
  out.graph = a.graph;
  out.states = a.states;
  out.finals = a.finals;
  out.initial = a.initial;
  for (const auto& e : a.edges) {
    if (e.input.size() <= 1) {
      out.edges.push_back(e);
      continue;
    }
    std::size_t prev = e.from;
    for (std::size_t i = 0; i < e.input.size(); ++i) {
      std::size_t next = i + 1 == e.input.size() ? e.to : out.add_fresh_state(a.states[e.from] + "~s");
      out.edges.push_back({prev, next, {e.input[i]}, i == 0 ? e.store : MonoidWord{}});
      prev = next;
    }
  }
  return out;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Accept: return "accept";
    case Membership::Reject: return "reject";
    case Membership::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Bounded search

namespace {

using Read = std::u16string;
using Store = std::u32string;

struct Config {
  std::size_t state;
  Read read;
  Store store;
  bool operator==(const Config&) const = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const {
    std::size_t h = std::hash<Read>{}(c.read);
    h = detail::hash_mix(h, std::hash<Store>{}(c.store));
    return detail::hash_mix(h, c.state);
  }
};

struct Prepared {
  const ValenceAutomaton& a;
  Alphabet out;
  std::vector<std::vector<std::size_t>> out_edges;
  std::vector<std::vector<Read>> outputs;  // per edge
  std::vector<MonoidWord> tokens;          // per edge
  std::vector<std::vector<char>> avail;    // per state: token codes still reachable

  Prepared(const ValenceAutomaton& automaton, const Substitution* sigma, std::size_t max_len)
      : a(automaton) {
    const auto n = a.states.size();
    for (const auto& e : a.edges) {
      if (e.from >= n || e.to >= n) throw Error(ErrorKind::InvalidArgument, "edge state out of range");
      for (auto t : e.store)
        if (t.vertex >= a.graph.size())
          throw Error(ErrorKind::MalformedWord, "edge token vertex out of range");
    }
    out_edges.resize(n);
    for (std::size_t i = 0; i < a.edges.size(); ++i) out_edges[a.edges[i].from].push_back(i);
    for (const auto& s : a.alphabet) out.add(s);
    for (const auto& e : a.edges) {
      std::vector<Read> options{Read{}};
      for (const auto& sym : e.input) {
        std::vector<Read> pieces;
        auto it = sigma ? sigma->find(sym) : Substitution::const_iterator{};
        if (sigma && it != sigma->end()) {
          for (const auto& w : it->second) pieces.push_back(encode(w));
        } else {
          pieces.push_back(encode(Word{sym}));
        }
        std::vector<Read> next;
        for (const auto& o : options)
          for (const auto& p : pieces)
            if (o.size() + p.size() <= max_len) next.push_back(o + p);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        options = std::move(next);
      }
      outputs.push_back(std::move(options));
      tokens.push_back(e.store);
    }
    // Token codes multiplied on edges reachable from each state.
    std::size_t codes = 2 * a.graph.size();
    avail.assign(n, std::vector<char>(codes, 0));
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        for (auto ei : out_edges[q]) {
          for (auto t : a.edges[ei].store) avail[s][t.code()] = 1;
          auto r = a.edges[ei].to;
          if (!seen[r]) {
            seen[r] = 1;
            stack.push_back(r);
          }
        }
      }
    }
  }

  Read encode(const Word& w) {
    Read r;
    for (const auto& s : w) r.push_back(static_cast<char16_t>(out.add(s)));
    return r;
  }

  Word decode(const Read& r) const {
    Word w;
    for (auto c : r) w.push_back(out[c]);
    return w;
  }

  // A reduced store is dead when some token can never be cancelled again.
  bool dead(std::size_t state, const MonoidWord& reduced) const {
    for (auto t : reduced) {
      if (t.negative && !a.graph.looped(t.vertex)) return true;
      if (!avail[state][t.inverse().code()]) return true;
    }
    return false;
  }

  enum class Step { Ok, Dead, TooLong };

  Step apply(const Store& store, std::size_t edge, std::size_t to, std::size_t store_bound,
             Store& result) const {
    const auto& toks = tokens[edge];
    MonoidWord w;
    w.reserve(store.size() + toks.size());
    for (auto c : store) w.push_back(Token::from_code(c));
    if (toks.empty()) {
      result = store;
      return Step::Ok;
    }
    for (auto t : toks) push_reduced(a.graph, w, t);
    if (dead(to, w)) return Step::Dead;
    if (w.size() > store_bound) return Step::TooLong;
    result.clear();
    for (auto t : trace_normal_form(a.graph, w)) result.push_back(t.code());
    return Step::Ok;
  }
};

struct SearchOutcome {
  std::vector<Read> accepted;
  bool complete = true;
  std::size_t configurations = 0;
};

SearchOutcome search(const Prepared& p, std::size_t max_len, const Read* target,
                     std::size_t run_bound, std::size_t store_bound) {
  SearchOutcome res;
  const auto& a = p.a;
  std::unordered_set<Config, ConfigHash> seen;
  std::set<Read> accepted;
  std::vector<std::pair<Config, std::size_t>> frontier{{{a.initial, {}, {}}, 0}};
  seen.insert(frontier[0].first);
  while (!frontier.empty()) {
    std::vector<std::pair<Config, std::size_t>> next;
    for (auto& [cfg, depth] : frontier) {
      if (a.finals[cfg.state] && cfg.store.empty()) {
        if (!target || cfg.read == *target) {
          accepted.insert(cfg.read);
          if (target) {
            res.accepted.assign(accepted.begin(), accepted.end());
            res.configurations = seen.size();
            return res;
          }
        }
      }
      for (auto ei : p.out_edges[cfg.state]) {
        const auto& e = a.edges[ei];
        Store store;
        auto step = p.apply(cfg.store, ei, e.to, store_bound, store);
        if (step == Prepared::Step::Dead) continue;
        for (const auto& piece : p.outputs[ei]) {
          if (cfg.read.size() + piece.size() > max_len) continue;
          Read read = cfg.read + piece;
          if (target && target->compare(0, read.size(), read) != 0) continue;
          if (step == Prepared::Step::TooLong) {
            res.complete = false;
            continue;
          }
          Config succ{e.to, std::move(read), store};
          if (seen.count(succ)) continue;
          if (depth + 1 > run_bound) {
            res.complete = false;
            continue;
          }
          seen.insert(succ);
          next.emplace_back(std::move(succ), depth + 1);
        }
      }
    }
    frontier = std::move(next);
  }
  res.accepted.assign(accepted.begin(), accepted.end());
  res.configurations = seen.size();
  return res;
}

}  // namespace

Membership accepts_bounded(const ValenceAutomaton& a, const Word& w, std::size_t run_bound,
                           std::size_t store_bound) {
  for (const auto& s : w)
    if (!a.alphabet.contains(s))
      throw Error(ErrorKind::AlphabetMismatch, "symbol '" + s + "' not in the automaton alphabet");
  Prepared p(a, nullptr, w.size());
  Read target;
  for (const auto& s : w) target.push_back(static_cast<char16_t>(p.out.index(s)));
  auto res = search(p, w.size(), &target, run_bound, store_bound);
  if (!res.accepted.empty()) return Membership::Accept;
  return res.complete ? Membership::Reject : Membership::Unknown;
}

Enumeration enumerate_substituted(const ValenceAutomaton& a, const Substitution& sigma,
                                  std::size_t max_len, std::size_t run_bound,
                                  std::size_t store_bound) {
  Prepared p(a, &sigma, max_len);
  auto res = search(p, max_len, nullptr, run_bound, store_bound);
  Enumeration out;
  for (const auto& r : res.accepted) out.words.insert(p.decode(r));
  out.complete = res.complete;
  out.configurations = res.configurations;
  return out;
}

Enumeration enumerate_bounded(const ValenceAutomaton& a, std::size_t max_len, std::size_t run_bound,
                              std::size_t store_bound) {
  Prepared p(a, nullptr, max_len);
  auto res = search(p, max_len, nullptr, run_bound, store_bound);
  Enumeration out;
  for (const auto& r : res.accepted) out.words.insert(p.decode(r));
  out.complete = res.complete;
  out.configurations = res.configurations;
  return out;
}

BoundedResult emptiness_bounded(const ValenceAutomaton& a, std::size_t run_bound,
                                std::size_t store_bound) {
  // Input length is unbounded here, so words are tracked by parent links
  // and configurations are (state, store) only.
  Prepared p(a, nullptr, static_cast<std::size_t>(-1));
  struct Node {
    std::size_t state;
    Store store;
    std::size_t len, steps, parent, edge;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::pair<std::size_t, Store>, std::size_t, detail::PairHash> best;
  using Item = std::tuple<std::size_t, std::size_t, std::size_t>;  // len, steps, node
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  nodes.push_back({a.initial, {}, 0, 0, static_cast<std::size_t>(-1), 0});
  queue.emplace(0, 0, 0);
  std::unordered_set<std::pair<std::size_t, Store>, detail::PairHash> done;
  BoundedResult res;
  while (!queue.empty()) {
    auto [len, steps, id] = queue.top();
    queue.pop();
    auto key = std::make_pair(nodes[id].state, nodes[id].store);
    if (!done.insert(key).second) continue;
    if (a.finals[nodes[id].state] && nodes[id].store.empty()) {
      res.kind = BoundedResult::Kind::NonemptyWitness;
      std::vector<std::size_t> path;
      for (auto n = id; nodes[n].parent != static_cast<std::size_t>(-1); n = nodes[n].parent)
        path.push_back(nodes[n].edge);
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const auto& in = a.edges[*it].input;
        res.witness.insert(res.witness.end(), in.begin(), in.end());
      }
      res.explored = done.size();
      return res;
    }
    for (auto ei : p.out_edges[nodes[id].state]) {
      const auto& e = a.edges[ei];
      Store store;
      auto step = p.apply(nodes[id].store, ei, e.to, store_bound, store);
      if (step == Prepared::Step::Dead) continue;
      if (step == Prepared::Step::TooLong || steps + 1 > run_bound) {
        res.complete = false;
        continue;
      }
      auto succ_key = std::make_pair(e.to, store);
      if (done.count(succ_key)) continue;
      std::size_t nlen = len + e.input.size();
      auto it = best.find(succ_key);
      if (it != best.end()) {
        const auto& old = nodes[it->second];
        if (std::tie(old.len, old.steps) <= std::tie(nlen, steps)) continue;
      }
      nodes.push_back({e.to, store, nlen, steps + 1, id, ei});
      best[succ_key] = nodes.size() - 1;
      queue.emplace(nlen, steps + 1, nodes.size() - 1);
    }
  }
  res.explored = done.size();
  return res;
}

// ---------------------------------------------------------------------------
// Products and transductions

namespace {

MonoidWord remap(const MonoidWord& w, const std::vector<std::size_t>& map) {
  MonoidWord out;
  for (auto t : w) out.push_back({static_cast<std::uint32_t>(map[t.vertex]), t.negative});
  return out;
}

MonoidWord concat(MonoidWord a, const MonoidWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ValenceAutomaton product_intersection(const ValenceAutomaton& a0, const ValenceAutomaton& b0) {
  if (!a0.alphabet.same_set(b0.alphabet))
    throw Error(ErrorKind::AlphabetMismatch, "product needs automata over the same alphabet");
  auto a = split_edges(a0);
  auto b = split_edges(b0);
  auto u = join(a.graph, b.graph);
  ValenceAutomaton out;
  out.graph = u.graph;
  out.alphabet = a.alphabet;
  auto id = [&](std::size_t p, std::size_t q) { return p * b.states.size() + q; };
  for (std::size_t p = 0; p < a.states.size(); ++p)
    for (std::size_t q = 0; q < b.states.size(); ++q)
      out.add_state("(" + a.states[p] + "," + b.states[q] + ")", a.finals[p] && b.finals[q]);
  out.initial = id(a.initial, b.initial);
  for (const auto& ea : a.edges) {
    auto ma = remap(ea.store, u.left);
    if (ea.input.empty()) {
      for (std::size_t q = 0; q < b.states.size(); ++q)
        out.edges.push_back({id(ea.from, q), id(ea.to, q), {}, ma});
      continue;
    }
    for (const auto& eb : b.edges)
      if (eb.input == ea.input)
        out.edges.push_back(
            {id(ea.from, eb.from), id(ea.to, eb.to), ea.input, concat(ma, remap(eb.store, u.right))});
  }
  for (const auto& eb : b.edges)
    if (eb.input.empty())
      for (std::size_t p = 0; p < a.states.size(); ++p)
        out.edges.push_back({id(p, eb.from), id(p, eb.to), {}, remap(eb.store, u.right)});
  return out;
}

std::size_t Transducer::add_state(const std::string& name, bool final) {
  if (std::find(states.begin(), states.end(), name) != states.end())
    throw Error(ErrorKind::Parse, "duplicate state '" + name + "'");
  states.push_back(name);
  finals.push_back(final);
  return states.size() - 1;
}

Transducer parse_transducer(std::string_view source) {
  Transducer t;
  std::optional<std::string> init;
  std::vector<std::string> final_names;
  struct Pending {
    std::size_t line;
    std::string from, to, in, out;
  };
  std::vector<Pending> pending;
  for (const auto& line : text::logical_lines(source)) {
    std::string_view c = line.content;
    if (text::starts_with(c, "states:")) {
      for (const auto& s : text::split_ws(c.substr(7))) t.add_state(s);
    } else if (text::starts_with(c, "init:")) {
      init = std::string(text::trim(c.substr(5)));
    } else if (text::starts_with(c, "final:")) {
      for (const auto& s : text::split_ws(c.substr(6)))
        if (s != "-") final_names.push_back(s);
    } else if (text::starts_with(c, "edge ")) {
      auto attrs = text::parse_attributes(c.substr(4), line.number);
      if (attrs.positional.size() != 2) text::fail(line.number, "edge needs <from> <to>");
      pending.push_back({line.number, attrs.positional[0], attrs.positional[1],
                         attrs.get("in").value_or("-"), attrs.get("out").value_or("-")});
    } else {
      text::fail(line.number, "unrecognised line '" + line.content + "'");
    }
  }
  auto state = [&](const std::string& name, std::size_t line) {
    auto it = std::find(t.states.begin(), t.states.end(), name);
    if (it == t.states.end()) text::fail(line, "undeclared state '" + name + "'");
    return static_cast<std::size_t>(it - t.states.begin());
  };
  if (!init) throw Error(ErrorKind::Parse, "missing 'init:' line");
  t.initial = state(*init, 0);
  for (const auto& f : final_names) t.finals[state(f, 0)] = true;
  for (const auto& e : pending)
    t.edges.push_back({state(e.from, e.line), state(e.to, e.line), parse_symbols(e.in),
                       parse_symbols(e.out)});
  return t;
}

std::string format_transducer(const Transducer& t) {
  std::string out = "states: " + join_ws(t.states) + "\ninit: " + t.states[t.initial] + "\nfinal:";
  for (std::size_t q = 0; q < t.states.size(); ++q)
    if (t.finals[q]) out += " " + t.states[q];
  out += "\n";
  for (const auto& e : t.edges)
    out += "edge " + t.states[e.from] + " " + t.states[e.to] + " in=\"" + quoted_word(e.input) +
           "\" out=\"" + quoted_word(e.output) + "\"\n";
  return out;
}

Transducer identity_transducer(const Alphabet& alphabet) {
  return morphism_transducer(Morphism{}, alphabet);
}

Transducer morphism_transducer(const Morphism& h, const Alphabet& alphabet) {
  Transducer t;
  t.add_state("t", true);
  for (const auto& x : alphabet) t.edges.push_back({0, 0, {x}, h.image(x)});
  return t;
}

Transducer inverse_morphism_transducer(const Morphism& h, const Alphabet& alphabet) {
  Transducer t;
  t.add_state("t", true);
  for (const auto& x : alphabet) t.edges.push_back({0, 0, h.image(x), {x}});
  return t;
}

ValenceAutomaton transduce(const ValenceAutomaton& a0, const Transducer& t0) {
  for (const auto& e : t0.edges)
    for (const auto& s : e.input)
      if (!a0.alphabet.contains(s))
        throw Error(ErrorKind::AlphabetMismatch,
                    "transducer reads '" + s + "', which the automaton's alphabet lacks");
  auto a = split_edges(a0);
  // Split transducer edges so each reads at most one symbol; the output
  // goes on the first link.
  Transducer t = t0;
  t.edges.clear();
  for (const auto& e : t0.edges) {
    if (e.input.size() <= 1) {
      t.edges.push_back(e);
      continue;
    }
    std::size_t prev = e.from;
    for (std::size_t i = 0; i < e.input.size(); ++i) {
      std::size_t next;
      if (i + 1 == e.input.size()) {
        next = e.to;
      } else {
        std::string base = t.states[e.from] + "~s";
        std::string name = base;
        for (std::size_t k = 1; std::find(t.states.begin(), t.states.end(), name) != t.states.end(); ++k)
          name = base + "~" + std::to_string(k);
        next = t.add_state(name);
      }
      t.edges.push_back({prev, next, {e.input[i]}, i == 0 ? e.output : Word{}});
      prev = next;
    }
  }
  ValenceAutomaton out;
  out.graph = a.graph;
  auto id = [&](std::size_t p, std::size_t s) { return p * t.states.size() + s; };
  for (std::size_t p = 0; p < a.states.size(); ++p)
    for (std::size_t s = 0; s < t.states.size(); ++s)
      out.add_state("(" + a.states[p] + "," + t.states[s] + ")", a.finals[p] && t.finals[s]);
  out.initial = id(a.initial, t.initial);
  for (const auto& e : t.edges)
    for (const auto& s : e.output) out.alphabet.add(s);
  for (const auto& ea : a.edges) {
    if (ea.input.empty()) {
      for (std::size_t s = 0; s < t.states.size(); ++s)
        out.edges.push_back({id(ea.from, s), id(ea.to, s), {}, ea.store});
      continue;
    }
    for (const auto& et : t.edges)
      if (et.input == ea.input)
        out.edges.push_back({id(ea.from, et.from), id(ea.to, et.to), et.output, ea.store});
  }
  for (const auto& et : t.edges)
    if (et.input.empty())
      for (std::size_t p = 0; p < a.states.size(); ++p)
        out.edges.push_back({id(p, et.from), id(p, et.to), et.output, {}});
  return out;
}

ValenceAutomaton apply_morphism(const ValenceAutomaton& a, const Morphism& h) {
  ValenceAutomaton out = a;
  out.alphabet = Alphabet{};
  for (const auto& s : a.alphabet)
    for (const auto& t : h.image(s)) out.alphabet.add(t);
  for (auto& e : out.edges) e.input = h.apply(e.input);
  return out;
}

ValenceAutomaton identity_automaton(const Graph& g) {
  ValenceAutomaton a;
  a.graph = g;
  a.add_state("q", true);
  for (std::uint32_t v = 0; v < g.size(); ++v)
    for (bool neg : {false, true}) {
      Token t{v, neg};
      a.add_edge(0, 0, {format_token(t, g)}, {t});
    }
  return a;
}

}  // namespace valence
