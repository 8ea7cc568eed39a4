// Reference implementations used by the tests. They are written directly
// from the definitions and share no code with the library.
#ifndef VALENCE_TEST_ORACLES_HPP
#define VALENCE_TEST_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "valence/grammar.hpp"
#include "valence/graph.hpp"
#include "valence/parikh.hpp"
#include "valence/petri.hpp"
#include "valence/symbols.hpp"
#include "valence/word.hpp"

namespace oracle {

using valence::Word;
using valence::WordSet;

inline std::string data(const std::string& name) { return std::string(VALENCE_TEST_DATA) + "/" + name; }

// Identity test for a graph without edges: the rewriting system
// a ā → 1 (and ā a → 1 on looped vertices) is confluent there, so a stack
// reduction decides it.
inline bool free_identity(const valence::Graph& g, const valence::MonoidWord& w) {
  std::vector<valence::Token> st;
  for (auto t : w) {
    if (!st.empty() && st.back().vertex == t.vertex && st.back().negative != t.negative &&
        (!st.back().negative || g.looped(t.vertex)))
      st.pop_back();
    else
      st.push_back(t);
  }
  return st.empty();
}

inline bool semi_dyck(const Word& w, const std::string& open, const std::string& close) {
  long depth = 0;
  for (const auto& s : w) {
    if (s == open) ++depth;
    else if (s == close && --depth < 0) return false;
    else if (s != open && s != close) return false;
  }
  return depth == 0;
}

// Projection to {a_i, A_i, b_i} must lie in ({a^n A^n} b)*.
inline bool b2_by_projection(const Word& w) {
  for (const char* i : {"1", "2"}) {
    std::string a = std::string("a") + i, A = std::string("A") + i, b = std::string("b") + i;
    long up = 0, down = 0;
    bool closing = false;
    for (const auto& s : w) {
      if (s == a) {
        if (closing) return false;
        ++up;
      } else if (s == A) {
        closing = true;
        ++down;
        if (down > up) return false;
      } else if (s == b) {
        if (up != down) return false;
        up = down = 0;
        closing = false;
      } else if (s.size() != 2 || (s[1] != '1' && s[1] != '2') ||
                 (s[0] != 'a' && s[0] != 'A' && s[0] != 'b')) {
        return false;
      }
    }
    if (up != 0 || down != 0) return false;
  }
  return true;
}

inline bool adjacent_plain(const valence::Graph& g, std::size_t u, std::size_t v) {
  return u != v && g.adjacent(u, v);
}

// Some 4-subset induces a 4-cycle or a path on 4 vertices.
inline bool has_induced_c4_p4(const valence::Graph& g) {
  std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          std::size_t v[4] = {a, b, c, d};
          int deg[4] = {0, 0, 0, 0}, edges = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (adjacent_plain(g, v[i], v[j])) ++deg[i], ++deg[j], ++edges;
          std::sort(deg, deg + 4);
          bool c4 = edges == 4 && deg[0] == 2 && deg[3] == 2;
          bool p4 = edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2;
          if (c4 || p4) return true;
        }
  return false;
}

inline bool has_ppn(const valence::Graph& g) {
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (g.looped(c)) continue;
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = x + 1; y < g.size(); ++y)
        if (adjacent_plain(g, c, x) && adjacent_plain(g, c, y) && !adjacent_plain(g, x, y))
          return true;
  }
  return false;
}

// Words of length <= max_len with a derivation whose sentential forms hold
// at most k nonterminals; k == 0 means unbounded (only safe without
// erasing cycles that grow the form).
inline WordSet index_derive(const valence::Cfg& g, std::size_t k, std::size_t max_len) {
  std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  auto is_nt = [&](const std::string& s) { return nts.count(s) != 0; };
  std::set<Word> seen;
  std::vector<Word> todo{{g.start}};
  seen.insert(todo.front());
  WordSet out;
  while (!todo.empty()) {
    Word f = todo.back();
    todo.pop_back();
    bool terminal = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!is_nt(f[i])) continue;
      terminal = false;
      for (const auto& p : g.productions) {
        if (p.lhs != f[i]) continue;
        Word h(f.begin(), f.begin() + static_cast<long>(i));
        h.insert(h.end(), p.rhs.begin(), p.rhs.end());
        h.insert(h.end(), f.begin() + static_cast<long>(i) + 1, f.end());
        std::size_t n = 0, t = 0;
        for (const auto& s : h) (is_nt(s) ? n : t)++;
        if (t > max_len || (k != 0 && n > k)) continue;
        if (seen.insert(h).second) todo.push_back(h);
      }
    }
    if (terminal) out.insert(f);
  }
  return out;
}

// Least fixpoint of truncated nonterminal languages.
inline WordSet cfg_language(const valence::Cfg& g, std::size_t max_len) {
  std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::map<std::string, WordSet> lang;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      WordSet acc{Word{}};
      for (const auto& s : p.rhs) {
        WordSet next;
        const WordSet* part = nullptr;
        WordSet single{Word{s}};
        part = nts.count(s) ? &lang[s] : &single;
        for (const auto& u : acc)
          for (const auto& v : *part)
            if (u.size() + v.size() <= max_len) {
              Word uv = u;
              uv.insert(uv.end(), v.begin(), v.end());
              next.insert(uv);
            }
        acc = std::move(next);
      }
      for (const auto& w : acc)
        if (lang[p.lhs].insert(w).second) changed = true;
    }
  }
  return lang[g.start];
}

// Can the net read w from `from` to `to`? Silent transitions are allowed
// up to `silent_bound` firings in total.
inline bool net_reads(const valence::PetriNet& n, const valence::Vector& from,
                      const valence::Vector& to, const Word& w, std::size_t silent_bound = 8) {
  std::function<bool(const valence::Vector&, std::size_t, std::size_t)> go =
      [&](const valence::Vector& m, std::size_t pos, std::size_t silent) {
        if (pos == w.size() && m == to) return true;
        for (const auto& t : n.transitions) {
          bool labelled = t.label.has_value();
          if (labelled && (pos == w.size() || *t.label != w[pos])) continue;
          if (!labelled && silent == silent_bound) continue;
          valence::Vector m2 = m;
          bool ok = true;
          for (std::size_t i = 0; i < m2.size(); ++i)
            if ((m2[i] += t.delta[i]) < 0) ok = false;
          if (ok && go(m2, pos + (labelled ? 1 : 0), silent + (labelled ? 0 : 1))) return true;
        }
        return false;
      };
  return go(from, 0, 0);
}

inline valence::ParikhVector letter_count(const Word& w) {
  valence::ParikhVector v;
  for (const auto& s : w) ++v[s];
  return v;
}

// All words over `sigma` of length <= max_len.
inline std::vector<Word> all_words(const std::vector<std::string>& sigma, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (const auto& s : sigma) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    start = end;
  }
  return out;
}

}  // namespace oracle

#endif  // VALENCE_TEST_ORACLES_HPP
