#include "valence/parikh.hpp"

#include <algorithm>

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

ParikhVector parikh(const Word& w) {
  ParikhVector v;
  for (const auto& s : w) ++v[s];
  return v;
}

ParikhSet parikh_set(const WordSet& words) {
  ParikhSet out;
  for (const auto& w : words) out.insert(parikh(w));
  return out;
}

ParikhVector operator+(const ParikhVector& a, const ParikhVector& b) {
  ParikhVector out = a;
  for (const auto& [s, n] : b) out[s] += n;
  return out;
}

std::size_t total(const ParikhVector& v) {
  std::size_t n = 0;
  for (const auto& [s, c] : v) n += c;
  return n;
}

std::string format_parikh(const ParikhVector& v, const Alphabet& order) {
  std::string out = "(";
  bool first = true;
  auto put = [&](const Symbol& s, std::uint64_t n) {
    out += (first ? "" : ",") + s + ":" + std::to_string(n);
    first = false;
  };
  for (const auto& s : order) {
    auto it = v.find(s);
    put(s, it == v.end() ? 0 : it->second);
  }
  for (const auto& [s, n] : v)
    if (!order.contains(s)) put(s, n);
  return out + ")";
}

ParikhVector parse_parikh(std::string_view source) {
  auto s = text::trim(source);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw Error(ErrorKind::Parse, "expected '(sym:n,...)', got '" + std::string(s) + "'");
  ParikhVector v;
  auto body = text::trim(s.substr(1, s.size() - 2));
  if (body.empty()) return v;
  for (const auto& entry : text::split(body, ',')) {
    auto colon = entry.rfind(':');
    if (colon == std::string::npos || colon == 0)
      throw Error(ErrorKind::Parse, "entry '" + entry + "' must be sym:n");
    std::string sym(text::trim(std::string_view(entry).substr(0, colon)));
    std::string num(text::trim(std::string_view(entry).substr(colon + 1)));
    std::uint64_t n = 0;
    try {
      std::size_t used = 0;
      long long parsed = std::stoll(num, &used);
      if (used != num.size() || parsed < 0) throw std::invalid_argument(num);
      n = static_cast<std::uint64_t>(parsed);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad count '" + num + "'");
    }
    if (n) v[sym] += n;
  }
  return v;
}

SemilinearSet parse_semilinear(std::string_view source) {
  SemilinearSet s;
  bool declared = false;
  for (const auto& line : text::logical_lines(source)) {
    std::string_view c = line.content;
    if (text::starts_with(c, "alphabet:")) {
      for (const auto& x : text::split_ws(c.substr(9))) s.alphabet.add(x);
      declared = true;
      continue;
    }
    if (!text::starts_with(c, "component")) text::fail(line.number, "expected 'component ...'");
    auto attrs = text::parse_attributes(c.substr(9), line.number);
    LinearSet ls;
    try {
      ls.base = parse_parikh(attrs.get("base").value_or("()"));
      auto periods = text::trim(attrs.get("periods").value_or("[]"));
      if (periods.size() < 2 || periods.front() != '[' || periods.back() != ']')
        text::fail(line.number, "periods must be [(..),(..)]");
      auto inner = periods.substr(1, periods.size() - 2);
      std::size_t i = 0;
      while (i < inner.size()) {
        auto open = inner.find('(', i);
        if (open == std::string_view::npos) break;
        auto close = inner.find(')', open);
        if (close == std::string_view::npos) text::fail(line.number, "unterminated period");
        auto p = parse_parikh(inner.substr(open, close - open + 1));
        if (!p.empty()) ls.periods.push_back(std::move(p));
        i = close + 1;
      }
    } catch (const Error& e) {
      if (std::string(e.what()).find("line ") != std::string::npos) throw;
      text::fail(line.number, e.what());
    }
    s.components.push_back(std::move(ls));
  }
  if (!declared)
    for (const auto& c : s.components) {
      for (const auto& [x, n] : c.base) s.alphabet.add(x);
      for (const auto& p : c.periods)
        for (const auto& [x, n] : p) s.alphabet.add(x);
    }
  for (const auto& c : s.components) {
    auto check = [&](const ParikhVector& v) {
      for (const auto& [x, n] : v)
        if (!s.alphabet.contains(x))
          throw Error(ErrorKind::AlphabetMismatch, "symbol '" + x + "' outside the declared alphabet");
    };
    check(c.base);
    for (const auto& p : c.periods) check(p);
  }
  return s;
}

SemilinearSet load_semilinear(const std::filesystem::path& path) {
  return parse_semilinear(text::read_file(path));
}

std::string format_semilinear(const SemilinearSet& s) {
  std::string out = "alphabet:";
  for (const auto& x : s.alphabet) out += " " + x;
  out += "\n";
  for (const auto& c : s.components) {
    out += "component base=" + format_parikh(c.base, s.alphabet) + " periods=[";
    for (std::size_t i = 0; i < c.periods.size(); ++i)
      out += (i ? "," : "") + format_parikh(c.periods[i], s.alphabet);
    out += "]\n";
  }
  return out;
}

namespace {

bool subtract(ParikhVector& r, const ParikhVector& p) {
  for (const auto& [x, n] : p) {
    auto it = r.find(x);
    if (it == r.end() || it->second < n) return false;
  }
  for (const auto& [x, n] : p)
    if ((r[x] -= n) == 0) r.erase(x);
  return true;
}

bool decompose(ParikhVector r, const std::vector<ParikhVector>& periods, std::size_t i,
               std::uint64_t bound) {
  if (r.empty()) return true;
  if (i == periods.size()) return false;
  for (std::uint64_t c = 0; c <= bound; ++c) {
    if (decompose(r, periods, i + 1, bound)) return true;
    if (!subtract(r, periods[i])) return false;
  }
  return false;
}

}  // namespace

bool semilinear_member(const ParikhVector& v, const SemilinearSet& s) {
  std::uint64_t bound = 1;
  for (const auto& [x, n] : v) {
    if (n && !s.alphabet.contains(x))
      throw Error(ErrorKind::AlphabetMismatch, "symbol '" + x + "' outside the semilinear alphabet");
    bound = std::max(bound, n + 1);
  }
  for (const auto& c : s.components) {
    ParikhVector r = v;
    for (auto it = r.begin(); it != r.end();) it = it->second ? std::next(it) : r.erase(it);
    if (!subtract(r, c.base)) continue;
    if (decompose(r, c.periods, 0, bound)) return true;
  }
  return false;
}

ValenceAutomaton homsli_automaton(const ValenceAutomaton& a0, const SemilinearSet& s,
                                  const Morphism& h) {
  for (const auto& x : s.alphabet)
    if (!a0.alphabet.contains(x))
      throw Error(ErrorKind::AlphabetMismatch,
                  "semilinear symbol '" + x + "' is not in the automaton alphabet");
  auto a = split_edges(a0);
  Graph counters;
  std::map<Symbol, std::size_t> zv;
  for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
    const auto& x = a.alphabet[i];
    std::string name = text::valid_identifier("z_" + x) ? "z_" + x : "z" + std::to_string(i);
    while (counters.find(name)) name += "_";
    zv[x] = counters.add_vertex(name, true);
  }
  for (std::size_t u = 0; u < counters.size(); ++u)
    for (std::size_t v = u + 1; v < counters.size(); ++v) counters.add_edge(u, v);
  auto u = join(a.graph, counters);

  auto remap_left = [&](const MonoidWord& w) {
    MonoidWord out;
    for (auto t : w) out.push_back({static_cast<std::uint32_t>(u.left[t.vertex]), t.negative});
    return out;
  };
  auto counter = [&](const Symbol& x, bool negative) {
    return Token{static_cast<std::uint32_t>(u.right[zv.at(x)]), negative};
  };
  auto debit = [&](const ParikhVector& v) {
    MonoidWord w;
    for (const auto& [x, n] : v)
      for (std::uint64_t i = 0; i < n; ++i) w.push_back(counter(x, true));
    return w;
  };

  ValenceAutomaton out;
  out.graph = u.graph;
  for (const auto& q : a.states) out.add_state(q);
  out.initial = a.initial;
  for (const auto& x : a.alphabet)
    for (const auto& y : h.image(x)) out.alphabet.add(y);
  for (const auto& e : a.edges) {
    auto store = remap_left(e.store);
    if (!e.input.empty()) store.push_back(counter(e.input[0], false));
    out.edges.push_back({e.from, e.to, h.apply(e.input), std::move(store)});
  }
  for (std::size_t j = 0; j < s.components.size(); ++j) {
    const auto& c = s.components[j];
    auto chk = out.add_fresh_state("chk" + std::to_string(j), true);
    for (std::size_t f = 0; f < a.states.size(); ++f)
      if (a.finals[f]) out.edges.push_back({f, chk, {}, debit(c.base)});
    for (const auto& p : c.periods) out.edges.push_back({chk, chk, {}, debit(p)});
  }
  return out;
}

}  // namespace valence
