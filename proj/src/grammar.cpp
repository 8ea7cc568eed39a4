#include "valence/grammar.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

bool Cfg::is_nonterminal(const Symbol& s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

void Cfg::add(const Symbol& lhs, Word rhs) {
  if (!is_nonterminal(lhs)) nonterminals.push_back(lhs);
  Production p{lhs, std::move(rhs)};
  if (std::find(productions.begin(), productions.end(), p) == productions.end())
    productions.push_back(std::move(p));
}

void Cfg::refresh_terminals() {
  std::set<Symbol> nts(nonterminals.begin(), nonterminals.end());
  std::vector<Symbol> out;
  std::set<Symbol> seen;
  for (const auto& t : terminals)
    if (!nts.count(t) && seen.insert(t).second) out.push_back(t);
  for (const auto& p : productions)
    for (const auto& s : p.rhs)
      if (!nts.count(s) && seen.insert(s).second) out.push_back(s);
  terminals = std::move(out);
}

namespace {

struct RawRule {
  std::size_t line;
  std::string lhs;
  std::string rhs;
};

// Splits a rule body on '|' into alternatives.
std::vector<Word> alternatives(std::string_view body) {
  std::vector<Word> out;
  for (const auto& alt : text::split(body, '|')) out.push_back(parse_symbols(alt));
  return out;
}

}  // namespace

Cfg parse_cfg(std::string_view source) {
  Cfg g;
  std::optional<std::string> start;
  std::vector<RawRule> rules;
  for (const auto& line : text::logical_lines(source)) {
    std::string_view c = line.content;
    if (text::starts_with(c, "start:")) {
      auto tok = text::split_ws(c.substr(6));
      if (tok.size() != 1) text::fail(line.number, "start takes one symbol");
      start = tok[0];
      continue;
    }
    if (text::starts_with(c, "terminals:")) {
      for (const auto& t : text::split_ws(c.substr(10))) g.terminals.push_back(t);
      continue;
    }
    auto arrow = c.find("->");
    if (arrow == std::string_view::npos) text::fail(line.number, "expected 'A -> ...'");
    auto lhs = text::split_ws(c.substr(0, arrow));
    if (lhs.size() != 1) text::fail(line.number, "left-hand side must be one symbol");
    auto body = text::trim(c.substr(arrow + 2));
    if (text::starts_with(body, "@"))
      text::fail(line.number, "automaton right-hand sides need a valence grammar");
    rules.push_back({line.number, lhs[0], std::string(body)});
  }
  if (rules.empty() && !start) throw Error(ErrorKind::Parse, "grammar has no productions");
  if (start) g.nonterminals.push_back(*start);
  for (const auto& r : rules)
    if (!g.is_nonterminal(r.lhs)) g.nonterminals.push_back(r.lhs);
  for (const auto& r : rules)
    for (auto& alt : alternatives(r.rhs)) g.add(r.lhs, std::move(alt));
  g.start = start ? *start : rules.front().lhs;
  g.refresh_terminals();
  return g;
}

Cfg load_cfg(const std::filesystem::path& path) { return parse_cfg(text::read_file(path)); }

namespace {

std::string rhs_text(const Word& w) {
  if (w.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + w[i];
  return out;
}

}  // namespace

std::string format_cfg(const Cfg& g) {
  std::string out = "start: " + g.start + "\n";
  for (const auto& a : g.nonterminals) {
    std::string line;
    for (const auto& p : g.productions)
      if (p.lhs == a) line += (line.empty() ? "" : " | ") + rhs_text(p.rhs);
    if (!line.empty()) out += a + " -> " + line + "\n";
  }
  return out;
}

bool is_cnf(const Cfg& g) {
  for (const auto& p : g.productions) {
    if (p.rhs.empty()) continue;
    if (p.rhs.size() == 1 && !g.is_nonterminal(p.rhs[0])) continue;
    if (p.rhs.size() == 2 && g.is_nonterminal(p.rhs[0]) && g.is_nonterminal(p.rhs[1])) continue;
    return false;
  }
  return true;
}

Cfg with_start(const Cfg& g, const Symbol& start) {
  if (!g.is_nonterminal(start))
    throw Error(ErrorKind::InvalidArgument, "'" + start + "' is not a nonterminal");
  Cfg out = g;
  out.start = start;
  return out;
}

namespace {

class FreshNames {
 public:
  explicit FreshNames(const Cfg& g) {
    used_.insert(g.nonterminals.begin(), g.nonterminals.end());
    used_.insert(g.terminals.begin(), g.terminals.end());
  }
  Symbol make(const std::string& base) {
    std::string name = base;
    for (std::size_t i = 1; used_.count(name); ++i) name = base + "_" + std::to_string(i);
    used_.insert(name);
    return name;
  }

 private:
  std::set<Symbol> used_;
};

Cfg prune_useless(const Cfg& g) {
  std::set<Symbol> generating;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (generating.count(p.lhs)) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
        return !g.is_nonterminal(s) || generating.count(s);
      });
      if (ok) {
        generating.insert(p.lhs);
        changed = true;
      }
    }
  }
  std::set<Symbol> reachable{g.start};
  std::vector<Symbol> stack{g.start};
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    for (const auto& p : g.productions) {
      if (p.lhs != a) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
        return !g.is_nonterminal(s) || generating.count(s);
      });
      if (!ok) continue;
      for (const auto& s : p.rhs)
        if (g.is_nonterminal(s) && reachable.insert(s).second) stack.push_back(s);
    }
  }
  Cfg out;
  out.start = g.start;
  out.terminals = g.terminals;
  for (const auto& a : g.nonterminals)
    if (a == g.start || (reachable.count(a) && generating.count(a))) out.nonterminals.push_back(a);
  for (const auto& p : g.productions) {
    if (!reachable.count(p.lhs) || !generating.count(p.lhs)) continue;
    bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
      return !g.is_nonterminal(s) || generating.count(s);
    });
    if (ok) out.add(p.lhs, p.rhs);
  }
  out.refresh_terminals();
  return out;
}

}  // namespace

Cfg to_cnf(const Cfg& g0) {
  Cfg g = g0;
  g.refresh_terminals();
  FreshNames fresh(g);

  // Terminals inside long right-hand sides get their own nonterminal.
  std::map<Symbol, Symbol> term_nt;
  Cfg step1;
  step1.start = g.start;
  step1.nonterminals = g.nonterminals;
  step1.terminals = g.terminals;
  for (auto p : g.productions) {
    if (p.rhs.size() >= 2)
      for (auto& s : p.rhs)
        if (!g.is_nonterminal(s)) {
          auto it = term_nt.find(s);
          if (it == term_nt.end()) {
            bool plain = text::valid_identifier(s);
            it = term_nt.emplace(s, fresh.make("T_" + (plain ? s : std::to_string(term_nt.size())))).first;
            step1.nonterminals.push_back(it->second);
          }
          s = it->second;
        }
    step1.productions.push_back(p);
  }
  for (const auto& [t, nt] : term_nt) step1.add(nt, {t});

  // Binarize.
  Cfg step2;
  step2.start = step1.start;
  step2.nonterminals = step1.nonterminals;
  step2.terminals = step1.terminals;
  for (const auto& p : step1.productions) {
    if (p.rhs.size() <= 2) {
      step2.add(p.lhs, p.rhs);
      continue;
    }
    Symbol lhs = p.lhs;
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      Symbol next = fresh.make(p.lhs + "_" + std::to_string(i + 1));
      step2.nonterminals.push_back(next);
      step2.add(lhs, {p.rhs[i], next});
      lhs = next;
    }
    step2.add(lhs, {p.rhs[p.rhs.size() - 2], p.rhs.back()});
  }

  // Unit closure.
  auto is_unit = [&](const Production& p) {
    return p.rhs.size() == 1 && step2.is_nonterminal(p.rhs[0]);
  };
  Cfg step3;
  step3.start = step2.start;
  step3.nonterminals = step2.nonterminals;
  step3.terminals = step2.terminals;
  for (const auto& a : step2.nonterminals) {
    std::set<Symbol> closure{a};
    std::vector<Symbol> stack{a};
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      for (const auto& p : step2.productions)
        if (p.lhs == b && is_unit(p) && closure.insert(p.rhs[0]).second) stack.push_back(p.rhs[0]);
    }
    for (const auto& p : step2.productions)
      if (closure.count(p.lhs) && !is_unit(p)) step3.add(a, p.rhs);
  }
  return prune_useless(step3);
}

namespace {

// Dense encoding of a grammar: nonterminal i has code i, terminal j has
// code nts + j.
struct Encoded {
  std::vector<Symbol> symbols;
  std::size_t nts = 0;
  std::vector<std::vector<std::u16string>> rules;  // by nonterminal

  explicit Encoded(const Cfg& g) {
    std::map<Symbol, std::size_t> code;
    for (const auto& a : g.nonterminals) {
      code[a] = symbols.size();
      symbols.push_back(a);
    }
    nts = symbols.size();
    for (const auto& p : g.productions)
      for (const auto& s : p.rhs)
        if (!code.count(s)) {
          code[s] = symbols.size();
          symbols.push_back(s);
        }
    rules.resize(nts);
    for (const auto& p : g.productions) {
      std::u16string rhs;
      for (const auto& s : p.rhs) rhs.push_back(static_cast<char16_t>(code[s]));
      rules[code[p.lhs]].push_back(rhs);
    }
    start = static_cast<char16_t>(code.at(g.start));
  }

  char16_t start = 0;
};

WordSet concat(const WordSet& a, const WordSet& b, std::size_t max_len) {
  WordSet out;
  for (const auto& u : a)
    for (const auto& v : b) {
      if (u.size() + v.size() > max_len) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.insert(std::move(w));
    }
  return out;
}

}  // namespace

WordSet derive_bounded(const Cfg& g, std::optional<std::size_t> k, std::size_t max_len) {
  if (!k) return generate(g, max_len);
  if (!is_cnf(g)) throw Error(ErrorKind::NotCNF, "finite-index derivation needs a CNF grammar");
  if (!g.is_nonterminal(g.start)) return {};
  Encoded enc(g);
  WordSet out;
  if (*k == 0) return out;
  std::unordered_set<std::u16string> seen;
  std::vector<std::u16string> stack{std::u16string(1, enc.start)};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    auto form = std::move(stack.back());
    stack.pop_back();
    std::size_t nt_count = 0, t_count = 0;
    for (auto c : form) (c < enc.nts ? nt_count : t_count)++;
    if (nt_count == 0) {
      Word w;
      for (auto c : form) w.push_back(enc.symbols[c]);
      out.insert(std::move(w));
      continue;
    }
    for (std::size_t i = 0; i < form.size(); ++i) {
      if (form[i] >= enc.nts) continue;
      for (const auto& rhs : enc.rules[form[i]]) {
        std::size_t nt = nt_count - 1, t = t_count;
        for (auto c : rhs) (c < enc.nts ? nt : t)++;
        if (nt > *k || t > max_len) continue;
        std::u16string next = form.substr(0, i) + rhs + form.substr(i + 1);
        if (seen.insert(next).second) stack.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::map<Symbol, WordSet> generate_all(const Cfg& g, std::size_t max_len, const Substitution* sigma) {
  std::map<Symbol, WordSet> lang;
  for (const auto& a : g.nonterminals) lang[a];
  auto symbol_set = [&](const Symbol& s) -> WordSet {
    if (g.is_nonterminal(s)) return lang[s];
    if (sigma) {
      auto it = sigma->find(s);
      if (it != sigma->end()) return it->second;
    }
    return WordSet{Word{s}};
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      WordSet cur{Word{}};
      for (const auto& s : p.rhs) {
        cur = concat(cur, symbol_set(s), max_len);
        if (cur.empty()) break;
      }
      auto& target = lang[p.lhs];
      for (auto& w : cur)
        if (target.insert(w).second) changed = true;
    }
  }
  return lang;
}

WordSet generate(const Cfg& g, std::size_t max_len, const Substitution* sigma) {
  auto all = generate_all(g, max_len, sigma);
  return all[g.start];
}

Symbol indexed_name(const Symbol& a, std::size_t i) { return a + "@" + std::to_string(i); }

Cfg build_G_ell(const Cfg& g, std::size_t ell) {
  if (!is_cnf(g)) throw Error(ErrorKind::NotCNF, "G^[l] needs a CNF grammar");
  Cfg out;
  out.start = indexed_name(g.start, ell);
  out.terminals = g.terminals;
  for (std::size_t i = ell + 1; i-- > 0;)
    for (const auto& a : g.nonterminals) out.nonterminals.push_back(indexed_name(a, i));
  // Keep S@ell first for readability.
  std::stable_partition(out.nonterminals.begin(), out.nonterminals.end(),
                        [&](const Symbol& s) { return s == out.start; });
  for (std::size_t i = 0; i <= ell; ++i)
    for (const auto& p : g.productions) {
      auto lhs = indexed_name(p.lhs, i);
      if (p.rhs.size() == 2) {
        if (i == 0) continue;
        out.add(lhs, {indexed_name(p.rhs[0], i), indexed_name(p.rhs[1], i - 1)});
        out.add(lhs, {indexed_name(p.rhs[0], i - 1), indexed_name(p.rhs[1], i)});
      } else {
        out.add(lhs, p.rhs);
      }
    }
  out.refresh_terminals();
  return out;
}

LinearDecomposition decompose_finite_index(const Cfg& g, std::size_t k) {
  LinearDecomposition d;
  d.k = k;
  d.indexed = build_G_ell(g, k);
  d.linear.start = indexed_name(g.start, k);
  for (const auto& a : g.nonterminals) d.linear.nonterminals.push_back(indexed_name(a, k));
  d.linear.terminals = g.terminals;
  for (const auto& p : d.indexed.productions)
    if (d.linear.is_nonterminal(p.lhs)) d.linear.add(p.lhs, p.rhs);
  d.linear.refresh_terminals();
  for (const auto& t : d.linear.terminals)
    if (d.indexed.is_nonterminal(t)) d.sigma[t] = t;
  return d;
}

Substitution decomposition_substitution(const LinearDecomposition& d, std::size_t max_len) {
  auto all = generate_all(d.indexed, max_len);
  Substitution s;
  for (const auto& [t, nt] : d.sigma) s[t] = all[nt];
  return s;
}

bool is_linear(const Cfg& g) {
  for (const auto& p : g.productions) {
    auto n = std::count_if(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return g.is_nonterminal(s); });
    if (n > 1) return false;
  }
  return true;
}

bool is_linear_normal_form(const Cfg& g) {
  for (const auto& p : g.productions) {
    if (p.rhs.empty()) continue;
    std::vector<std::size_t> nts;
    for (std::size_t i = 0; i < p.rhs.size(); ++i)
      if (g.is_nonterminal(p.rhs[i])) nts.push_back(i);
    if (nts.size() != 1) return false;
    std::size_t before = nts[0], after = p.rhs.size() - nts[0] - 1;
    if (before > 1 || after > 1) return false;
  }
  return true;
}

Cfg to_linear_normal_form(const Cfg& g) {
  if (!is_linear(g))
    throw Error(ErrorKind::NotLinearNormalForm, "grammar has a production with two nonterminals");
  FreshNames fresh(g);
  Cfg out;
  out.start = g.start;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  for (const auto& p : g.productions) {
    auto pos = std::find_if(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return g.is_nonterminal(s); });
    Word u(p.rhs.begin(), pos), v;
    std::optional<Symbol> b;
    if (pos != p.rhs.end()) {
      b = *pos;
      v.assign(pos + 1, p.rhs.end());
    }
    Symbol lhs = p.lhs;
    if (!b) {
      // A → w becomes A → w₁ F₁, F₁ → w₂ F₂, ..., Fₙ → ε.
      for (const auto& s : u) {
        Symbol next = fresh.make(p.lhs + "'");
        out.nonterminals.push_back(next);
        out.add(lhs, {s, next});
        lhs = next;
      }
      out.add(lhs, {});
      continue;
    }
    std::size_t i = 0, j = v.size();
    while (u.size() - i > 1 || j > 1) {
      Word rhs;
      if (i < u.size()) rhs.push_back(u[i++]);
      Symbol next = fresh.make(p.lhs + "'");
      out.nonterminals.push_back(next);
      rhs.push_back(next);
      if (j > 0) rhs.push_back(v[--j]);
      out.add(lhs, rhs);
      lhs = next;
    }
    Word rhs(u.begin() + static_cast<std::ptrdiff_t>(i), u.end());
    rhs.push_back(*b);
    rhs.insert(rhs.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j));
    out.add(lhs, rhs);
  }
  out.refresh_terminals();
  return out;
}

LinearDerivation linear_derivation_language(const Cfg& g) {
  if (!is_linear_normal_form(g))
    throw Error(ErrorKind::NotLinearNormalForm, "productions must be A -> x1 B x2 or A -> -");
  LinearDerivation d;
  auto& a = d.automaton;
  for (const auto& n : g.nonterminals) a.add_state(n);
  std::string end = "end";
  while (g.is_nonterminal(end)) end += "'";
  std::size_t sink = a.add_state(end, true);
  a.initial = *a.find_state(g.start);
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const auto& p = g.productions[i];
    Symbol name = "p" + std::to_string(i);
    d.productions.push_back(p);
    a.alphabet.add(name);
    if (p.rhs.empty()) {
      a.add_edge(*a.find_state(p.lhs), sink, {name});
      d.g1.set(name, {});
      d.g2.set(name, {});
      continue;
    }
    std::size_t b = 0;
    while (!g.is_nonterminal(p.rhs[b])) ++b;
    a.add_edge(*a.find_state(p.lhs), *a.find_state(p.rhs[b]), {name});
    d.g1.set(name, Word(p.rhs.begin(), p.rhs.begin() + static_cast<std::ptrdiff_t>(b)));
    d.g2.set(name, Word(p.rhs.begin() + static_cast<std::ptrdiff_t>(b) + 1, p.rhs.end()));
  }
  return d;
}

WordSet derivation_image(const LinearDerivation& d, const WordSet& words) {
  WordSet out;
  for (const auto& w : words) {
    Word img = d.g1.apply(w);
    Word rev(w.rbegin(), w.rend());
    auto tail = d.g2.apply(rev);
    img.insert(img.end(), tail.begin(), tail.end());
    out.insert(std::move(img));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Valence grammars

bool ValenceGrammar::is_nonterminal(const Symbol& s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

std::vector<Symbol> ValenceGrammar::terminals() const {
  std::vector<Symbol> out;
  std::set<Symbol> seen;
  auto note = [&](const Symbol& s) {
    if (!is_nonterminal(s) && seen.insert(s).second) out.push_back(s);
  };
  for (const auto& p : productions) {
    if (p.words)
      for (const auto& w : *p.words)
        for (const auto& s : w) note(s);
    if (p.automaton)
      for (const auto& s : p.automaton->alphabet) note(s);
  }
  return out;
}

ValenceGrammar parse_valence_grammar(std::string_view source, const std::filesystem::path& base_dir) {
  ValenceGrammar g;
  std::optional<std::string> start;
  struct Pending {
    std::size_t line;
    std::string lhs;
    std::optional<std::string> body;
    std::optional<ValenceAutomaton> automaton;
  };
  std::vector<Pending> rules;
  auto lines = text::logical_lines(source);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    std::string_view c = line.content;
    if (text::starts_with(c, "start:")) {
      auto tok = text::split_ws(c.substr(6));
      if (tok.size() != 1) text::fail(line.number, "start takes one symbol");
      start = tok[0];
      continue;
    }
    auto arrow = c.find("->");
    if (arrow == std::string_view::npos) text::fail(line.number, "expected 'A -> ...'");
    auto lhs = text::split_ws(c.substr(0, arrow));
    if (lhs.size() != 1) text::fail(line.number, "left-hand side must be one symbol");
    auto body = text::trim(c.substr(arrow + 2));
    if (!text::starts_with(body, "@automaton")) {
      rules.push_back({line.number, lhs[0], std::string(body), std::nullopt});
      continue;
    }
    auto arg = text::trim(body.substr(10));
    if (arg == "{") {
      std::string block;
      int depth = 1;
      std::size_t j = i + 1;
      for (; j < lines.size(); ++j) {
        const auto& inner = lines[j].content;
        if (inner == "}" && --depth == 0) break;
        if (inner.back() == '{') ++depth;
        block += inner + "\n";
      }
      if (j == lines.size()) text::fail(line.number, "unterminated @automaton block");
      rules.push_back({line.number, lhs[0], std::nullopt, parse_automaton(block, base_dir)});
      i = j;
    } else {
      auto path = std::filesystem::path(std::string(arg));
      if (path.is_relative()) path = base_dir / path;
      rules.push_back({line.number, lhs[0], std::nullopt, load_automaton(path)});
    }
  }
  if (rules.empty()) throw Error(ErrorKind::Parse, "grammar has no productions");
  if (start) g.nonterminals.push_back(*start);
  for (const auto& r : rules)
    if (!g.is_nonterminal(r.lhs)) g.nonterminals.push_back(r.lhs);
  for (auto& r : rules) {
    VgProduction p{r.lhs, std::nullopt, std::nullopt};
    if (r.body) {
      WordSet ws;
      for (auto& alt : alternatives(*r.body)) ws.insert(std::move(alt));
      p.words = std::move(ws);
    } else {
      p.automaton = std::move(r.automaton);
    }
    g.productions.push_back(std::move(p));
  }
  g.start = start ? *start : rules.front().lhs;
  return g;
}

ValenceGrammar load_valence_grammar(const std::filesystem::path& path) {
  return parse_valence_grammar(text::read_file(path), path.parent_path());
}

std::string format_valence_grammar(const ValenceGrammar& g) {
  std::string out = "start: " + g.start + "\n";
  for (const auto& p : g.productions) {
    if (p.words) {
      std::string line;
      for (const auto& w : *p.words) line += (line.empty() ? "" : " | ") + rhs_text(w);
      out += p.lhs + " -> " + line + "\n";
    } else {
      out += p.lhs + " -> @automaton {\n";
      for (const auto& l : text::logical_lines(format_automaton(*p.automaton)))
        out += "  " + l.content + "\n";
      out += "}\n";
    }
  }
  return out;
}

ValenceGrammar to_valence_grammar(const Cfg& g) {
  ValenceGrammar out;
  out.start = g.start;
  out.nonterminals = g.nonterminals;
  for (const auto& a : g.nonterminals) {
    WordSet ws;
    for (const auto& p : g.productions)
      if (p.lhs == a) ws.insert(p.rhs);
    if (!ws.empty()) out.productions.push_back({a, std::move(ws), std::nullopt});
  }
  return out;
}

Enumeration generate(const ValenceGrammar& g, std::size_t max_len, std::size_t run_bound,
                     std::size_t store_bound) {
  std::map<Symbol, WordSet> lang;
  for (const auto& a : g.nonterminals) lang[a];
  Enumeration res;
  for (bool changed = true; changed;) {
    changed = false;
    res.complete = true;
    Substitution sigma(lang.begin(), lang.end());
    for (const auto& p : g.productions) {
      WordSet produced;
      if (p.words) {
        for (const auto& rhs : *p.words) {
          WordSet cur{Word{}};
          for (const auto& s : rhs) {
            auto it = sigma.find(s);
            cur = concat(cur, it != sigma.end() ? it->second : WordSet{Word{s}}, max_len);
            if (cur.empty()) break;
          }
          produced.insert(cur.begin(), cur.end());
        }
      } else {
        auto e = enumerate_substituted(*p.automaton, sigma, max_len, run_bound, store_bound);
        res.complete = res.complete && e.complete;
        res.configurations += e.configurations;
        produced = std::move(e.words);
      }
      auto& target = lang[p.lhs];
      for (auto& w : produced)
        if (target.insert(w).second) changed = true;
    }
  }
  res.words = lang[g.start];
  return res;
}

}  // namespace valence
