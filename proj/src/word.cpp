#include "valence/word.hpp"

#include <deque>
#include <unordered_set>

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

MonoidWord parse_monoid_word(std::string_view source, const Graph& g) {
  MonoidWord w;
  auto tokens = text::split_ws(source);
  if (tokens.size() == 1 && tokens[0] == "-") return w;
  for (const auto& tok : tokens) {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
      throw Error(ErrorKind::MalformedWord, "token '" + tok + "' must end in '+' or '-'");
    auto v = g.find(std::string_view(tok).substr(0, tok.size() - 1));
    if (!v) throw Error(ErrorKind::MalformedWord, "token '" + tok + "' names an unknown vertex");
    w.push_back({static_cast<std::uint32_t>(*v), tok.back() == '-'});
  }
  return w;
}

std::string format_token(Token t, const Graph& g) {
  return g.name(t.vertex) + (t.negative ? "-" : "+");
}

std::string format_monoid_word(const MonoidWord& w, const Graph& g) {
  if (w.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_token(w[i], g);
  }
  return out;
}

void push_reduced(const Graph& g, MonoidWord& reduced, Token t) {
  for (std::size_t i = reduced.size(); i-- > 0;) {
    Token u = reduced[i];
    if (u.vertex == t.vertex) {
      if (cancels(g, u, t)) {
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
      break;
    }
    if (!g.adjacent(u.vertex, t.vertex)) break;
  }
  reduced.push_back(t);
}

MonoidWord reduce(const Graph& g, const MonoidWord& w) {
  MonoidWord r;
  for (auto t : w) push_reduced(g, r, t);
  return r;
}

MonoidWord trace_normal_form(const Graph& g, const MonoidWord& w) {
  MonoidWord rest = w, out;
  out.reserve(w.size());
  while (!rest.empty()) {
    // A token can move to the front iff it commutes with everything before it.
    std::size_t best = 0;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (!(rest[i] < rest[best])) continue;
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j) free = commute(g, rest[j], rest[i]);
      if (free) best = i;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

MonoidWord canonical(const Graph& g, const MonoidWord& w) {
  return trace_normal_form(g, reduce(g, w));
}

bool is_identity(const Graph& g, const MonoidWord& w) {
  for (auto t : w)
    if (t.vertex >= g.size()) throw Error(ErrorKind::MalformedWord, "token vertex out of range");
  return reduce(g, w).empty();
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::string pack(const MonoidWord& w) {
  std::string s;
  s.reserve(w.size());
  for (auto t : w) s.push_back(static_cast<char>(t.code() + 1));
  return s;
}

Token unpack(char c) { return Token::from_code(static_cast<unsigned char>(c) - 1U); }

template <typename Expand>
Tri closure(const MonoidWord& w, std::size_t step_bound, Expand expand) {
  for (auto t : w)
    if (t.code() + 1 > 255) throw Error(ErrorKind::InvalidArgument, "oracle supports < 127 vertices");
  std::unordered_set<std::string> seen;
  std::deque<std::string> queue;
  auto start = pack(w);
  if (start.empty()) return Tri::Yes;
  seen.insert(start);
  queue.push_back(start);
  bool truncated = false;
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    bool found = false;
    expand(cur, [&](std::string next) {
      if (found) return;
      if (next.empty()) {
        found = true;
        return;
      }
      if (seen.count(next)) return;
      if (seen.size() >= step_bound) {
        truncated = true;
        return;
      }
      seen.insert(next);
      queue.push_back(std::move(next));
    });
    if (found) return Tri::Yes;
  }
  return truncated ? Tri::Unknown : Tri::No;
}

}  // namespace

Tri is_identity_oracle(const Graph& g, const MonoidWord& w, std::size_t step_bound) {
  return closure(w, step_bound, [&](const std::string& cur, auto&& emit) {
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      Token a = unpack(cur[i]), b = unpack(cur[i + 1]);
      if (cancels(g, a, b)) {
        std::string next = cur;
        next.erase(i, 2);
        emit(std::move(next));
      }
      if (commute(g, a, b)) {
        std::string next = cur;
        std::swap(next[i], next[i + 1]);
        emit(std::move(next));
      }
    }
  });
}

Tri is_identity_bidirectional(const Graph& g, const MonoidWord& w, std::size_t slack,
                              std::size_t step_bound) {
  std::size_t cap = w.size() + slack;
  std::vector<std::string> pairs;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    Token pos{v, false}, neg{v, true};
    pairs.push_back(pack({pos, neg}));
    if (g.looped(v)) pairs.push_back(pack({neg, pos}));
  }
  return closure(w, step_bound, [&](const std::string& cur, auto&& emit) {
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      Token a = unpack(cur[i]), b = unpack(cur[i + 1]);
      if (cancels(g, a, b)) {
        std::string next = cur;
        next.erase(i, 2);
        emit(std::move(next));
      }
      if (commute(g, a, b)) {
        std::string next = cur;
        std::swap(next[i], next[i + 1]);
        emit(std::move(next));
      }
    }
    if (cur.size() + 2 > cap) return;
    for (std::size_t i = 0; i <= cur.size(); ++i)
      for (const auto& p : pairs) {
        std::string next = cur;
        next.insert(i, p);
        emit(std::move(next));
      }
  });
}

MonoidWord project(const MonoidWord& w, const std::vector<bool>& keep) {
  MonoidWord out;
  for (auto t : w)
    if (t.vertex < keep.size() && keep[t.vertex]) out.push_back(t);
  return out;
}

bool has_nontrivial_right_invertible(const Graph& g) {
  // a_v·ā_v = 1 for every vertex, so a_v is right-invertible; it is
  // non-trivial exactly when a_v alone is not the identity.
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    Token a{v, false};
    if (is_identity(g, {a, a.inverse()}) && !is_identity(g, {a})) return true;
  }
  return false;
}

bool has_nontrivial_right_invertible(const MonoidExpr& e) {
  return has_nontrivial_right_invertible(expr_to_graph(e));
}

}  // namespace valence
