#include "valence/petri.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "search_util.hpp"
#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

namespace {

std::vector<std::string_view> vector_groups(std::string_view s, std::size_t line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    if (s[i] != '(') text::fail(line, "expected '(' in vector list");
    auto close = s.find(')', i);
    if (close == std::string_view::npos) text::fail(line, "unterminated vector");
    out.push_back(s.substr(i, close - i + 1));
    i = close + 1;
  }
  return out;
}

void check_dim(const Vector& v, std::size_t d, const std::string& what) {
  if (v.size() != d)
    throw Error(ErrorKind::DimensionMismatch, what + " has " + std::to_string(v.size()) +
                                                  " entries, expected " + std::to_string(d));
}

void check_marking(const Vector& v, std::size_t d, const std::string& what) {
  check_dim(v, d, what);
  for (auto x : v)
    if (x < 0) throw Error(ErrorKind::DimensionMismatch, what + " has a negative entry");
}

std::string join_ws(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i];
  return out;
}

}  // namespace

PetriNet parse_petri(std::string_view source) {
  PetriNet n;
  std::optional<std::size_t> dim;
  std::optional<Alphabet> declared;
  struct Pending {
    std::size_t line;
    std::string label;
    Vector delta;
  };
  std::vector<Pending> trans;
  std::optional<std::pair<std::size_t, Vector>> init;
  std::vector<std::pair<std::size_t, Vector>> finals;
  for (const auto& line : text::logical_lines(source)) {
    std::string_view c = line.content;
    if (text::starts_with(c, "dim:")) {
      auto tok = text::split_ws(c.substr(4));
      if (tok.size() != 1) text::fail(line.number, "dim takes one number");
      try {
        std::size_t used = 0;
        long long d = std::stoll(tok[0], &used);
        if (used != tok[0].size() || d < 0) throw std::invalid_argument(tok[0]);
        dim = static_cast<std::size_t>(d);
      } catch (const std::exception&) {
        text::fail(line.number, "bad dimension '" + tok[0] + "'");
      }
    } else if (text::starts_with(c, "alphabet:")) {
      declared = Alphabet(text::split_ws(c.substr(9)));
    } else if (text::starts_with(c, "init:")) {
      init = {line.number, text::parse_vector(c.substr(5), line.number)};
    } else if (text::starts_with(c, "final:")) {
      for (auto g : vector_groups(c.substr(6), line.number))
        finals.push_back({line.number, text::parse_vector(g, line.number)});
    } else if (text::starts_with(c, "trans ")) {
      auto rest = text::trim(c.substr(6));
      auto open = rest.find('(');
      if (open == std::string_view::npos) text::fail(line.number, "trans needs a delta vector");
      auto label = std::string(text::trim(rest.substr(0, open)));
      if (label.empty() || label.find_first_of(" \t") != std::string::npos)
        text::fail(line.number, "trans needs exactly one label or '-'");
      trans.push_back({line.number, label, text::parse_vector(rest.substr(open), line.number)});
    } else {
      text::fail(line.number, "unrecognised line '" + line.content + "'");
    }
  }
  if (!dim) throw Error(ErrorKind::Parse, "missing 'dim:' line");
  n.dim = *dim;
  auto at = [](std::size_t line) { return "line " + std::to_string(line) + ": "; };
  n.initial = init ? init->second : Vector(n.dim, 0);
  if (init) check_marking(n.initial, n.dim, at(init->first) + "initial marking");
  for (const auto& [line, v] : finals) {
    check_marking(v, n.dim, at(line) + "final marking");
    n.finals.push_back(v);
  }
  if (declared) n.alphabet = *declared;
  for (const auto& t : trans) {
    check_dim(t.delta, n.dim, at(t.line) + "transition delta");
    PetriTransition pt;
    pt.delta = t.delta;
    if (t.label != "-") {
      if (declared && !declared->contains(t.label))
        throw Error(ErrorKind::AlphabetMismatch,
                    at(t.line) + "label '" + t.label + "' is not in the alphabet");
      n.alphabet.add(t.label);
      pt.label = t.label;
    }
    n.transitions.push_back(std::move(pt));
  }
  return n;
}

PetriNet load_petri(const std::filesystem::path& path) { return parse_petri(text::read_file(path)); }

std::string format_petri(const PetriNet& n) {
  std::string out = "dim: " + std::to_string(n.dim) + "\n";
  out += "alphabet:" + (n.alphabet.empty() ? std::string() : " " + join_ws(n.alphabet.symbols())) +
         "\n";
  out += "init: " + text::format_vector(n.initial, false) + "\n";
  out += "final:";
  for (const auto& f : n.finals) out += " " + text::format_vector(f, false);
  out += "\n";
  for (const auto& t : n.transitions)
    out += "trans " + t.label.value_or("-") + " " + text::format_vector(t.delta, true) + "\n";
  return out;
}

Enumeration petri_enumerate(const PetriNet& n, const Vector& from, const Vector& to,
                            std::size_t max_len, std::size_t step_bound) {
  check_marking(from, n.dim, "source marking");
  check_marking(to, n.dim, "target marking");
  for (const auto& t : n.transitions) check_dim(t.delta, n.dim, "transition delta");
  // key: marking entries then symbol indices of the word read so far
  using Key = std::vector<std::int64_t>;
  Enumeration out;
  std::unordered_set<Key, detail::VectorHash> seen;
  std::vector<Key> layer{from};
  seen.insert(from);
  for (std::size_t step = 0;; ++step) {
    std::vector<Key> next;
    for (const auto& key : layer) {
      ++out.configurations;
      if (std::equal(to.begin(), to.end(), key.begin())) {
        Word w;
        for (std::size_t i = n.dim; i < key.size(); ++i) w.push_back(n.alphabet[key[i]]);
        out.words.insert(std::move(w));
      }
      std::size_t len = key.size() - n.dim;
      for (const auto& t : n.transitions) {
        if (t.label && len == max_len) continue;
        Key k2 = key;
        bool ok = true;
        for (std::size_t i = 0; i < n.dim; ++i)
          if ((k2[i] += t.delta[i]) < 0) ok = false;
        if (!ok) continue;
        if (t.label) k2.push_back(static_cast<std::int64_t>(n.alphabet.index(*t.label)));
        if (seen.count(k2)) continue;
        if (step == step_bound) {
          out.complete = false;
          continue;
        }
        seen.insert(k2);
        next.push_back(std::move(k2));
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return out;
}

ValenceAutomaton petri_to_valence(const PetriNet& n, const Vector& from, const Vector& to) {
  check_marking(from, n.dim, "source marking");
  check_marking(to, n.dim, "target marking");
  ValenceAutomaton a;
  for (std::size_t i = 0; i < n.dim; ++i) a.graph.add_vertex("p" + std::to_string(i + 1), false);
  for (std::size_t i = 0; i < n.dim; ++i)
    for (std::size_t j = i + 1; j < n.dim; ++j) a.graph.add_edge(i, j);
  a.alphabet = n.alphabet;
  auto load = [&](const Vector& v, bool negative) {
    MonoidWord w;
    for (std::size_t i = 0; i < n.dim; ++i)
      for (std::int64_t c = 0; c < v[i]; ++c) w.push_back({static_cast<std::uint32_t>(i), negative});
    return w;
  };
  auto i0 = a.add_state("init");
  auto q = a.add_state("run");
  auto f = a.add_state("done", true);
  a.initial = i0;
  a.add_edge(i0, q, {}, load(from, false));
  a.add_edge(q, f, {}, load(to, true));
  for (const auto& t : n.transitions) {
    check_dim(t.delta, n.dim, "transition delta");
    MonoidWord w;
    for (std::size_t i = 0; i < n.dim; ++i)
      for (std::int64_t c = 0; c < std::abs(t.delta[i]); ++c)
        w.push_back({static_cast<std::uint32_t>(i), t.delta[i] < 0});
    a.add_edge(q, q, t.label ? Word{*t.label} : Word{}, std::move(w));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Priority machines

std::size_t PriorityMachine::add_state(const std::string& name, bool final) {
  states.push_back(name);
  finals.push_back(final);
  return states.size() - 1;
}

std::optional<std::size_t> PriorityMachine::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  return std::nullopt;
}

void PriorityMachine::add_edge(std::size_t from, std::size_t to, Word input, std::size_t ztest,
                               Vector delta) {
  if (delta.size() > counters)
    throw Error(ErrorKind::CounterMismatch, "delta longer than the counter count");
  if (ztest > counters) throw Error(ErrorKind::CounterMismatch, "zero test beyond the last counter");
  delta.resize(counters, 0);
  for (const auto& x : input) alphabet.add(x);
  edges.push_back({from, to, std::move(input), ztest, std::move(delta)});
}

PriorityMachine parse_machine(std::string_view source) {
  PriorityMachine m;
  std::optional<std::size_t> counters;
  std::optional<std::string> init;
  std::vector<std::string> final_names;
  std::optional<Alphabet> declared;
  struct Pending {
    std::size_t line;
    std::string from, to, input;
    std::size_t ztest;
    Vector delta;
  };
  std::vector<Pending> pending;
  bool have_states = false;
  for (const auto& line : text::logical_lines(source)) {
    std::string_view c = line.content;
    if (text::starts_with(c, "states:")) {
      for (const auto& s : text::split_ws(c.substr(7))) {
        if (m.find_state(s)) text::fail(line.number, "duplicate state '" + s + "'");
        m.add_state(s);
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
    } else if (text::starts_with(c, "counters:")) {
      auto tok = text::split_ws(c.substr(9));
      if (tok.size() != 1 || tok[0].find_first_not_of("0123456789") != std::string::npos)
        text::fail(line.number, "counters takes one number");
      counters = std::stoull(tok[0]);
    } else if (text::starts_with(c, "edge ")) {
      auto attrs = text::parse_attributes(c.substr(4), line.number);
      if (attrs.positional.size() != 2) text::fail(line.number, "edge needs <from> <to>");
      Pending p{line.number, attrs.positional[0], attrs.positional[1],
                attrs.get("in").value_or("-"), 0, {}};
      if (auto z = attrs.get("ztest")) {
        if (z->empty() || z->find_first_not_of("0123456789") != std::string::npos)
          text::fail(line.number, "bad ztest '" + *z + "'");
        p.ztest = std::stoull(*z);
      }
      if (auto d = attrs.get("delta")) p.delta = text::parse_vector(*d, line.number);
      pending.push_back(std::move(p));
    } else {
      text::fail(line.number, "unrecognised line '" + line.content + "'");
    }
  }
  if (!have_states) throw Error(ErrorKind::Parse, "missing 'states:' line");
  if (!init) throw Error(ErrorKind::Parse, "missing 'init:' line");
  if (!counters) throw Error(ErrorKind::Parse, "missing 'counters:' line");
  m.counters = *counters;
  auto state = [&](const std::string& name, std::size_t line) {
    auto q = m.find_state(name);
    if (!q) text::fail(line, "undeclared state '" + name + "'");
    return *q;
  };
  m.initial = state(*init, 0);
  for (const auto& f : final_names) m.finals[state(f, 0)] = true;
  if (declared) m.alphabet = *declared;
  for (auto& e : pending) {
    if (!e.delta.empty() && e.delta.size() != m.counters)
      throw Error(ErrorKind::CounterMismatch,
                  "line " + std::to_string(e.line) + ": delta has " + std::to_string(e.delta.size()) +
                      " entries, machine has " + std::to_string(m.counters) + " counters");
    if (e.ztest > m.counters)
      throw Error(ErrorKind::CounterMismatch,
                  "line " + std::to_string(e.line) + ": zero test beyond the last counter");
    Word input = declared ? parse_word(e.input, *declared) : parse_symbols(e.input);
    m.add_edge(state(e.from, e.line), state(e.to, e.line), std::move(input), e.ztest,
               std::move(e.delta));
  }
  return m;
}

PriorityMachine load_machine(const std::filesystem::path& path) {
  return parse_machine(text::read_file(path));
}

std::string format_machine(const PriorityMachine& m) {
  std::string out = "states: " + join_ws(m.states) + "\n";
  out += "init: " + m.states[m.initial] + "\n";
  std::vector<std::string> finals;
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (m.finals[q]) finals.push_back(m.states[q]);
  out += "final:" + (finals.empty() ? std::string() : " " + join_ws(finals)) + "\n";
  out += "alphabet:" + (m.alphabet.empty() ? std::string() : " " + join_ws(m.alphabet.symbols())) +
         "\n";
  out += "counters: " + std::to_string(m.counters) + "\n";
  for (const auto& e : m.edges) {
    out += "edge " + m.states[e.from] + " " + m.states[e.to] + " in=\"" +
           (e.input.empty() ? std::string("-") : join_ws(e.input)) + "\"";
    if (e.ztest) out += " ztest=" + std::to_string(e.ztest);
    if (std::any_of(e.delta.begin(), e.delta.end(), [](auto x) { return x != 0; }))
      out += " delta=" + text::format_vector(e.delta, true);
    out += "\n";
  }
  return out;
}

PriorityMachine split_edges(const PriorityMachine& m) {
  PriorityMachine out;
  out.alphabet = m.alphabet;
  out.counters = m.counters;
  out.states = m.states;
  out.finals = m.finals;
  out.initial = m.initial;
  std::size_t fresh = 0;
  for (const auto& e : m.edges) {
    if (e.input.size() <= 1) {
      out.edges.push_back(e);
      continue;
    }
    std::size_t prev = e.from;
    for (std::size_t i = 0; i < e.input.size(); ++i) {
      std::size_t next = i + 1 == e.input.size()
                             ? e.to
                             : out.add_state(m.states[e.from] + "~s" + std::to_string(fresh++));
      if (i == 0)
        out.edges.push_back({prev, next, {e.input[i]}, e.ztest, e.delta});
      else
        out.edges.push_back({prev, next, {e.input[i]}, 0, Vector(m.counters, 0)});
      prev = next;
    }
  }
  return out;
}

PriorityMachine apply_morphism(const PriorityMachine& m, const Morphism& h) {
  PriorityMachine out = m;
  out.alphabet = Alphabet();
  for (const auto& x : m.alphabet)
    for (const auto& y : h.image(x)) out.alphabet.add(y);
  for (auto& e : out.edges) e.input = h.apply(e.input);
  return out;
}

// ---------------------------------------------------------------------------
// Bounded searches

namespace {

struct PreparedMachine {
  std::size_t k = 0;
  std::size_t sigma = 0;
  struct Edge {
    std::size_t to;
    std::size_t ztest;
    std::vector<std::uint32_t> reads;  // symbol indices
    Vector delta;
  };
  std::vector<std::vector<Edge>> out;
};

PreparedMachine prepare(const PriorityMachine& m, std::size_t max_ztest) {
  PreparedMachine p;
  p.k = m.counters;
  p.sigma = m.alphabet.size();
  p.out.resize(m.states.size());
  for (const auto& e : m.edges) {
    if (e.ztest > max_ztest) continue;
    PreparedMachine::Edge pe{e.to, e.ztest, {}, e.delta};
    pe.delta.resize(m.counters, 0);
    for (const auto& x : e.input) pe.reads.push_back(static_cast<std::uint32_t>(m.alphabet.index(x)));
    p.out[e.from].push_back(std::move(pe));
  }
  return p;
}

enum class Step { Ok, Blocked, Cut };

// Applies an edge to the counter part of `key` (positions 1..k).
Step fire(const PreparedMachine::Edge& e, std::u32string& key, const Vector& caps) {
  for (std::size_t i = 0; i < e.ztest; ++i)
    if (key[1 + i] != 0) return Step::Blocked;
  bool cut = false;
  for (std::size_t i = 0; i < e.delta.size(); ++i) {
    std::int64_t v = static_cast<std::int64_t>(key[1 + i]) + e.delta[i];
    if (v < 0) return Step::Blocked;
    if (v > caps[i]) cut = true;
    key[1 + i] = static_cast<char32_t>(v);
  }
  return cut ? Step::Cut : Step::Ok;
}

}  // namespace

ParikhReach prio_parikh_reach(const PriorityMachine& m, const ReachQuery& q) {
  if (q.from.size() != m.counters)
    throw Error(ErrorKind::CounterMismatch, "reachability query does not match the counter count");
  for (const auto& t : q.to)
    if (t.size() != m.counters)
      throw Error(ErrorKind::CounterMismatch, "target valuation does not match the counter count");
  auto p = prepare(m, q.max_ztest);
  Vector caps = q.caps;
  if (caps.empty()) {
    std::int64_t top = 0, step = 1;
    for (auto x : q.from) top = std::max(top, x);
    for (const auto& t : q.to)
      for (auto x : t) top = std::max(top, x);
    for (const auto& e : m.edges)
      for (auto x : e.delta) step = std::max(step, std::abs(x));
    caps.assign(m.counters, top + static_cast<std::int64_t>(q.max_len) * step + 2);
  }
  if (caps.size() != m.counters) throw Error(ErrorKind::CounterMismatch, "caps do not match counters");
  std::vector<bool> target(m.states.size(), false);
  for (auto t : q.to_states) target.at(t) = true;

  // States that cannot reach a target state are never entered.
  std::vector<std::vector<std::size_t>> preds(m.states.size());
  for (std::size_t s = 0; s < p.out.size(); ++s)
    for (const auto& e : p.out[s]) preds[e.to].push_back(s);
  std::vector<bool> live = target;
  std::vector<std::size_t> work(q.to_states.begin(), q.to_states.end());
  while (!work.empty()) {
    auto s = work.back();
    work.pop_back();
    for (auto r : preds[s])
      if (!live[r]) {
        live[r] = true;
        work.push_back(r);
      }
  }

  // Largest value each counter may hold in a state and still end in a target
  // valuation: along paths that never decrement it the value can only grow,
  // and a zero test caps it at 0. Longest-path relaxation; cycles only lose.
  constexpr std::int64_t dead = -1, open = std::numeric_limits<std::int64_t>::max();
  const std::size_t nc = m.counters;
  std::vector<std::int64_t> bound(m.states.size() * nc, dead);
  {
    Vector top_to(nc, dead);
    for (const auto& t : q.to)
      for (std::size_t c = 0; c < nc; ++c) top_to[c] = std::max(top_to[c], t[c]);
    for (auto t : q.to_states)
      for (std::size_t c = 0; c < nc; ++c) bound[t * nc + c] = top_to[c];
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < p.out.size(); ++s) {
        if (!live[s]) continue;
        for (const auto& e : p.out[s])
          for (std::size_t c = 0; c < nc; ++c) {
            std::int64_t after = bound[e.to * nc + c], v;
            if (after == dead) continue;
            if (e.delta[c] < 0 || after == open) v = open;
            else v = after - e.delta[c];
            if (c < e.ztest) v = std::min<std::int64_t>(v, 0);
            if (v > bound[s * nc + c]) {
              bound[s * nc + c] = v;
              changed = true;
            }
          }
      }
    }
  }

  // key layout: state, counters, Parikh counts, total length
  const std::size_t k = m.counters;
  const std::size_t len_at = 1 + k + p.sigma;
  std::u32string start(len_at + 1, 0);
  start[0] = static_cast<char32_t>(q.from_state);
  for (std::size_t i = 0; i < k; ++i) {
    if (q.from[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative counter value");
    start[1 + i] = static_cast<char32_t>(q.from[i]);
  }
  std::map<std::u32string, std::size_t> wanted;
  for (std::size_t i = 0; i < q.to.size(); ++i) {
    std::u32string c(k, 0);
    for (std::size_t j = 0; j < k; ++j) c[j] = static_cast<char32_t>(std::max<std::int64_t>(q.to[i][j], 0));
    wanted.emplace(c, i);
  }
  ParikhReach out;
  out.per_target.resize(q.to.size());
  if (!live[q.from_state]) return out;

  // Visited keys are packed: 4 bytes of state, then counters and Parikh
  // counts in the narrowest width that holds every allowed value. The length
  // is the sum of the Parikh counts and is left out.
  std::int64_t widest = static_cast<std::int64_t>(q.max_len);
  for (std::size_t i = 0; i < k; ++i) widest = std::max({widest, caps[i], q.from[i]});
  const std::size_t w = widest < 0x100 ? 1 : widest < 0x10000 ? 2 : 4;
  const std::size_t packed_width = 4 + (k + p.sigma) * w;
  auto pack = [&](const std::u32string& key, unsigned char* dst) {
    for (std::size_t i = 0; i < len_at; ++i) {
      std::uint32_t v = key[i];
      std::size_t bytes = i == 0 ? 4 : w;
      for (std::size_t j = 0; j < bytes; ++j) *dst++ = static_cast<unsigned char>(v >> (8 * j));
    }
  };
  auto unpack = [&](const unsigned char* src) {
    std::u32string key(len_at + 1, 0);
    for (std::size_t i = 0; i < len_at; ++i) {
      std::uint32_t v = 0;
      std::size_t bytes = i == 0 ? 4 : w;
      for (std::size_t j = 0; j < bytes; ++j) v |= static_cast<std::uint32_t>(*src++) << (8 * j);
      key[i] = v;
      if (i > k) key[len_at] += v;
    }
    return key;
  };
  detail::PackedSet seen(packed_width);
  std::vector<unsigned char> buf(packed_width);
  std::vector<std::uint32_t> stack;
  pack(start, buf.data());
  stack.push_back(static_cast<std::uint32_t>(seen.insert(buf.data()).first));
  while (!stack.empty()) {
    auto key = unpack(seen.key(stack.back()));
    stack.pop_back();
    ++out.configurations;
    if (target[key[0]]) {
      auto it = wanted.find(key.substr(1, k));
      if (it != wanted.end()) {
        ParikhVector v;
        for (std::size_t s = 0; s < p.sigma; ++s)
          if (key[1 + k + s]) v[m.alphabet[s]] = key[1 + k + s];
        out.vectors.insert(v);
        out.per_target[it->second].insert(std::move(v));
      }
    }
    for (const auto& e : p.out[key[0]]) {
      if (!live[e.to] || key[len_at] + e.reads.size() > q.max_len) continue;
      auto k2 = key;
      auto r = fire(e, k2, caps);
      if (r == Step::Blocked) continue;
      if (r == Step::Cut) {
        out.complete = false;
        continue;
      }
      const std::int64_t* b = &bound[e.to * nc];
      bool hopeless = false;
      for (std::size_t c = 0; c < nc && !hopeless; ++c) hopeless = k2[1 + c] > b[c];
      if (hopeless) continue;
      k2[0] = static_cast<char32_t>(e.to);
      for (auto s : e.reads) ++k2[1 + k + s];
      k2[len_at] += static_cast<char32_t>(e.reads.size());
      pack(k2, buf.data());
      auto [id, fresh] = seen.insert(buf.data());
      if (fresh) stack.push_back(static_cast<std::uint32_t>(id));
    }
  }
  return out;
}

ParikhReach prio_parikh_image(const PriorityMachine& m, std::size_t max_len,
                              std::int64_t counter_bound) {
  ReachQuery q;
  q.from_state = m.initial;
  q.from.assign(m.counters, 0);
  q.to = {Vector(m.counters, 0)};
  for (std::size_t s = 0; s < m.states.size(); ++s)
    if (m.finals[s]) q.to_states.push_back(s);
  q.max_len = max_len;
  q.caps.assign(m.counters, counter_bound);
  return prio_parikh_reach(m, q);
}

Enumeration prio_enumerate(const PriorityMachine& m, std::size_t max_len, std::size_t step_bound,
                           std::int64_t counter_bound) {
  auto p = prepare(m, m.counters);
  Vector caps(m.counters, counter_bound);
  const std::size_t k = m.counters;
  std::u32string start(1 + k, 0);
  start[0] = static_cast<char32_t>(m.initial);
  Enumeration out;
  std::unordered_set<std::u32string> seen{start};
  std::vector<std::u32string> layer{start};
  for (std::size_t step = 0; !layer.empty(); ++step) {
    std::vector<std::u32string> next;
    for (const auto& key : layer) {
      ++out.configurations;
      if (m.finals[key[0]] && std::all_of(key.begin() + 1, key.begin() + 1 + k,
                                          [](char32_t c) { return c == 0; })) {
        Word w;
        for (std::size_t i = 1 + k; i < key.size(); ++i) w.push_back(m.alphabet[key[i]]);
        out.words.insert(std::move(w));
      }
      for (const auto& e : p.out[key[0]]) {
        if (key.size() - 1 - k + e.reads.size() > max_len) continue;
        auto k2 = key;
        auto r = fire(e, k2, caps);
        if (r == Step::Blocked) continue;
        if (r == Step::Cut) {
          out.complete = false;
          continue;
        }
        k2[0] = static_cast<char32_t>(e.to);
        for (auto s : e.reads) k2.push_back(s);
        if (seen.count(k2)) continue;
        if (step == step_bound) {
          out.complete = false;
          continue;
        }
        seen.insert(k2);
        next.push_back(std::move(k2));
      }
    }
    layer = std::move(next);
  }
  return out;
}

BoundedResult prio_emptiness_bounded(const PriorityMachine& m, std::size_t step_bound,
                                     std::int64_t counter_bound) {
  auto p = prepare(m, m.counters);
  Vector caps(m.counters, counter_bound);
  const std::size_t k = m.counters;
  struct Node {
    std::u32string key;
    std::size_t parent;
    const PreparedMachine::Edge* via;
    std::size_t len, steps;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::u32string, std::size_t> best;
  using Item = std::tuple<std::size_t, std::size_t, std::size_t>;  // len, steps, node
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::u32string start(1 + k, 0);
  start[0] = static_cast<char32_t>(m.initial);
  nodes.push_back({start, 0, nullptr, 0, 0});
  best[start] = 0;
  queue.push({0, 0, 0});
  BoundedResult out;
  std::unordered_set<std::u32string> done;
  while (!queue.empty()) {
    auto [len, steps, id] = queue.top();
    queue.pop();
    auto key = nodes[id].key;
    if (!done.insert(key).second) continue;
    ++out.explored;
    if (m.finals[key[0]] &&
        std::all_of(key.begin() + 1, key.end(), [](char32_t c) { return c == 0; })) {
      std::vector<std::size_t> chain;
      for (auto n = id; n != 0; n = nodes[n].parent) chain.push_back(n);
      Word w;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        for (auto s : nodes[*it].via->reads) w.push_back(m.alphabet[s]);
      out.kind = BoundedResult::Kind::NonemptyWitness;
      out.witness = std::move(w);
      return out;
    }
    for (const auto& e : p.out[key[0]]) {
      auto k2 = key;
      auto r = fire(e, k2, caps);
      if (r == Step::Blocked) continue;
      if (r == Step::Cut || steps == step_bound) {
        out.complete = false;
        continue;
      }
      k2[0] = static_cast<char32_t>(e.to);
      if (done.count(k2)) continue;
      std::size_t l2 = len + e.reads.size(), s2 = steps + 1;
      auto it = best.find(k2);
      if (it != best.end()) {
        const auto& old = nodes[it->second];
        if (std::pair(old.len, old.steps) <= std::pair(l2, s2)) continue;
      }
      nodes.push_back({k2, id, &e, l2, s2});
      best[k2] = nodes.size() - 1;
      queue.push({l2, s2, nodes.size() - 1});
    }
  }
  out.kind = BoundedResult::Kind::EmptyUpToBound;
  return out;
}

// ---------------------------------------------------------------------------
// Closure constructions

PriorityMachine word_machine(const Word& w) {
  PriorityMachine m;
  auto s = m.add_state("s0", w.empty());
  m.initial = s;
  if (!w.empty()) m.add_edge(s, m.add_state("s1", true), w);
  return m;
}

PriorityMachine substitution_compose(const PriorityMachine& m0,
                                     const std::map<Symbol, PriorityMachine>& sigma) {
  std::optional<std::size_t> ell;
  for (const auto& [x, s] : sigma) {
    if (ell && *ell != s.counters)
      throw Error(ErrorKind::CounterMismatch, "substituted machines disagree on the counter count");
    ell = s.counters;
  }
  const std::size_t l = ell.value_or(0);
  auto m = split_edges(m0);
  PriorityMachine out;
  out.counters = l + m.counters;
  for (const auto& q : m.states) out.add_state(q);
  out.finals = m.finals;
  out.initial = m.initial;
  auto shift = [&](const Vector& d) {
    Vector v(l, 0);
    v.insert(v.end(), d.begin(), d.end());
    return v;
  };
  for (const auto& x : m.alphabet)
    if (!sigma.count(x)) out.alphabet.add(x);
  for (const auto& [x, s] : sigma)
    for (const auto& y : s.alphabet) out.alphabet.add(y);
  for (std::size_t ei = 0; ei < m.edges.size(); ++ei) {
    const auto& e = m.edges[ei];
    std::size_t z = e.ztest ? e.ztest + l : 0;
    auto it = e.input.empty() ? sigma.end() : sigma.find(e.input[0]);
    if (it == sigma.end()) {
      out.add_edge(e.from, e.to, e.input, z, shift(e.delta));
      continue;
    }
    const auto& inner = it->second;
    std::vector<std::size_t> copy(inner.states.size());
    for (std::size_t q = 0; q < inner.states.size(); ++q)
      copy[q] = out.add_state("e" + std::to_string(ei) + "/" + inner.states[q]);
    out.add_edge(e.from, copy[inner.initial], {}, z, shift(e.delta));
    for (const auto& ie : inner.edges) {
      Vector d = ie.delta;
      d.resize(out.counters, 0);
      out.add_edge(copy[ie.from], copy[ie.to], ie.input, ie.ztest, std::move(d));
    }
    for (std::size_t q = 0; q < inner.states.size(); ++q)
      if (inner.finals[q]) out.add_edge(copy[q], e.to, {}, l);
  }
  return out;
}

PriorityMachine presburger_close(const PriorityMachine& m0, const SemilinearSet& s,
                                 const Morphism& h) {
  for (const auto& x : s.alphabet)
    if (!m0.alphabet.contains(x))
      throw Error(ErrorKind::AlphabetMismatch,
                  "semilinear symbol '" + x + "' is not in the machine alphabet");
  auto m = split_edges(m0);
  const std::size_t k = m.counters, n = m.alphabet.size();
  PriorityMachine out;
  out.counters = k + n;
  for (const auto& q : m.states) out.add_state(q);
  out.initial = m.initial;
  for (const auto& x : m.alphabet)
    for (const auto& y : h.image(x)) out.alphabet.add(y);
  for (const auto& e : m.edges) {
    Vector d = e.delta;
    d.resize(out.counters, 0);
    if (!e.input.empty()) d[k + m.alphabet.index(e.input[0])] += 1;
    out.add_edge(e.from, e.to, h.apply(e.input), e.ztest, std::move(d));
  }
  auto debit = [&](const ParikhVector& v) {
    Vector d(out.counters, 0);
    for (const auto& [x, c] : v) d[k + m.alphabet.index(x)] -= static_cast<std::int64_t>(c);
    return d;
  };
  for (std::size_t j = 0; j < s.components.size(); ++j) {
    const auto& c = s.components[j];
    std::string name = "chk" + std::to_string(j);
    while (out.find_state(name)) name += "'";
    auto chk = out.add_state(name, true);
    for (std::size_t f = 0; f < m.states.size(); ++f)
      if (m.finals[f]) out.add_edge(f, chk, {}, 0, debit(c.base));
    for (const auto& p : c.periods) out.add_edge(chk, chk, {}, 0, debit(p));
  }
  return out;
}

}  // namespace valence
