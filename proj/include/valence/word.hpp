#ifndef VALENCE_WORD_HPP
#define VALENCE_WORD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "valence/graph.hpp"

namespace valence {

/// a_v (positive) or ā_v (negative) for vertex index v.
struct Token {
  std::uint32_t vertex = 0;
  bool negative = false;

  std::uint32_t code() const { return vertex * 2 + (negative ? 1 : 0); }
  static Token from_code(std::uint32_t c) { return {c / 2, (c & 1U) != 0}; }
  Token inverse() const { return {vertex, !negative}; }

  friend bool operator==(Token a, Token b) { return a.code() == b.code(); }
  friend bool operator<(Token a, Token b) { return a.code() < b.code(); }
};

using MonoidWord = std::vector<Token>;

/// Whitespace-separated `name+` / `name-`; `-` alone is the empty word.
MonoidWord parse_monoid_word(std::string_view text, const Graph& g);
std::string format_monoid_word(const MonoidWord& w, const Graph& g);
std::string format_token(Token t, const Graph& g);

/// `second` cancels `first` when first·second = 1 holds as a relation.
inline bool cancels(const Graph& g, Token first, Token second) {
  if (first.vertex != second.vertex || first.negative == second.negative) return false;
  return !first.negative || g.looped(first.vertex);
}

/// Distinct adjacent vertices commute; a vertex never commutes with itself.
inline bool commute(const Graph& g, Token a, Token b) {
  return a.vertex != b.vertex && g.adjacent(a.vertex, b.vertex);
}

/// Appends `t` to an already reduced word, cancelling it against the
/// nearest token of its vertex when every token in between commutes with it.
void push_reduced(const Graph& g, MonoidWord& reduced, Token t);
MonoidWord reduce(const Graph& g, const MonoidWord& w);
/// Lexicographically least representative of the trace of `w` (no reduction).
MonoidWord trace_normal_form(const Graph& g, const MonoidWord& w);
/// reduce followed by trace_normal_form: equal results iff equal elements
/// of the monoid, for words reduced by the stacking procedure.
MonoidWord canonical(const Graph& g, const MonoidWord& w);

bool is_identity(const Graph& g, const MonoidWord& w);

enum class Tri { Yes, No, Unknown };
std::string_view to_string(Tri t);

/// Breadth-first closure under cancellations and commutations.
Tri is_identity_oracle(const Graph& g, const MonoidWord& w, std::size_t step_bound = 1000000);
/// Closure under the full two-way Thue system: cancellations, commutations
/// and insertions of cancelling pairs, with words capped at |w| + slack.
Tri is_identity_bidirectional(const Graph& g, const MonoidWord& w, std::size_t slack = 2,
                              std::size_t step_bound = 2000000);

/// Keeps tokens whose vertex is in `keep` (indexed by vertex).
MonoidWord project(const MonoidWord& w, const std::vector<bool>& keep);

/// R₁(𝕄Γ) ≠ {1} for Γ = expr_to_graph(e), decided through the word problem.
bool has_nontrivial_right_invertible(const MonoidExpr& e);
bool has_nontrivial_right_invertible(const Graph& g);

}  // namespace valence

#endif  // VALENCE_WORD_HPP
