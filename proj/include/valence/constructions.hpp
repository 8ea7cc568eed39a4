#ifndef VALENCE_CONSTRUCTIONS_HPP
#define VALENCE_CONSTRUCTIONS_HPP

#include <string>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/grammar.hpp"
#include "valence/graph.hpp"
#include "valence/petri.hpp"
#include "valence/symbols.hpp"

namespace valence {

/// S → K₀ | K₁ | ε with K_i = {S a₁ S ⋯ S aₙ S | a₁⋯aₙ ∈ L(a_i)}. Both
/// right-hand automata are lifted to the disjoint union of the two graphs;
/// input symbols named after a generator (`v+`, `v-`) follow the vertex
/// renaming of the union.
ValenceGrammar freeproduct_grammar(const ValenceAutomaton& a0, const ValenceAutomaton& a1);

/// Valence automaton over 𝔹_{q₁} ∗ ⋯ ∗ 𝔹_{qₙ} ∗ 𝕄Γ_M for a grammar whose
/// right-hand sides are word sets or automata sharing the graph Γ_M. One
/// fresh unlooped vertex `q$P<i>_<state>` per right-hand-side state. Opening
/// and closing steps read `[` and `]` when keep_brackets is set and nothing
/// otherwise; edges reading a nonterminal survive only as opening steps.
ValenceAutomaton grammar_to_valence(const ValenceGrammar& g, bool keep_brackets = false);

/// Rewrites an automaton over 𝔹_p ∗ 𝔹_q ∗ M into one over 𝔹_r ∗ M by
/// p ↦ rr, p̄ ↦ r̄r̄, q ↦ r m r, q̄ ↦ r̄ m̄ r̄, where m is the first vertex of M.
ValenceAutomaton bpowers_embed(const ValenceAutomaton& a, const std::string& p,
                               const std::string& q);
/// The token image of a single word under the same map, for inspection.
struct Embedding {
  Graph graph;
  std::vector<std::size_t> vertex_map;  // old vertex → new vertex, unused for p, q
  std::size_t r = 0, m = 0, p = 0, q = 0;
};
Embedding bpowers_embedding(const Graph& g, const std::string& p, const std::string& q);
MonoidWord bpowers_apply(const Embedding& e, const MonoidWord& w);

/// Symbols of the B₂ alphabet: a1 A1 b1 a2 A2 b2 (A_i is the barred a_i).
Alphabet b2_alphabet();
/// Automaton over Γ accepting B₂ = ({a₁ⁿA₁ⁿ}b₁)* ⧢ ({a₂ⁿA₂ⁿ}b₂)*; Γ must
/// contain an induced C4 or P4 once loops are dropped.
ValenceAutomaton b2_witness(const Graph& g);
/// Direct membership test for B₂.
bool b2_member(const Word& w);

struct PrioProduction {
  Symbol lhs;
  PriorityMachine rhs;
};

/// Grammar whose right-hand sides are priority machine languages over N ∪ T.
struct PrioGrammar {
  std::vector<Symbol> nonterminals;
  std::vector<PrioProduction> productions;
  Symbol start;

  bool is_nonterminal(const Symbol& s) const;
};

PrioGrammar to_prio_grammar(const Cfg& g);
/// Word-set right-hand sides and automata without storage words only.
PrioGrammar to_prio_grammar(const ValenceGrammar& g);

/// Machine with the Parikh image of L(g). Pending nonterminal occurrences
/// are kept in one counter each; the hub picks one, runs a right-hand-side
/// machine on the low counters and credits the nonterminals it reads.
PriorityMachine parikh_flatten(const PrioGrammar& g);

}  // namespace valence

#endif  // VALENCE_CONSTRUCTIONS_HPP
