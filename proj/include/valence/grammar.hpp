#ifndef VALENCE_GRAMMAR_HPP
#define VALENCE_GRAMMAR_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/symbols.hpp"

namespace valence {

struct Production {
  Symbol lhs;
  Word rhs;

  bool operator==(const Production&) const = default;
};

/// Context-free grammar. Nonterminals are exactly the left-hand sides;
/// every other right-hand-side symbol is a terminal.
struct Cfg {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  std::vector<Production> productions;
  Symbol start;

  bool is_nonterminal(const Symbol& s) const;
  /// Registers lhs as a nonterminal; duplicate productions are ignored.
  void add(const Symbol& lhs, Word rhs);
  /// Recomputes the terminal list from the productions.
  void refresh_terminals();
};

/// `start: S` and lines `S -> a S b | -`.
Cfg parse_cfg(std::string_view source);
Cfg load_cfg(const std::filesystem::path& path);
std::string format_cfg(const Cfg& g);

/// Right-hand sides in N² ∪ T ∪ {ε}.
bool is_cnf(const Cfg& g);
/// Keeps ε-productions, removes unit productions and useless nonterminals.
Cfg to_cnf(const Cfg& g);
Cfg with_start(const Cfg& g, const Symbol& start);

/// Words of length ≤ max_len derivable with every sentential form holding
/// at most k nonterminals (any position may be rewritten). With no k, the
/// plain language. A finite k requires CNF.
WordSet derive_bounded(const Cfg& g, std::optional<std::size_t> k, std::size_t max_len);

/// Least fixpoint of the truncated languages of all nonterminals. Terminals
/// with an entry in `sigma` range over their set.
std::map<Symbol, WordSet> generate_all(const Cfg& g, std::size_t max_len,
                                       const Substitution* sigma = nullptr);
WordSet generate(const Cfg& g, std::size_t max_len, const Substitution* sigma = nullptr);

/// Nonterminal A at level i, rendered `A@i`.
Symbol indexed_name(const Symbol& a, std::size_t i);

/// G^[ℓ]: A@i → B@i C@(i−1) | B@(i−1) C@i for A → BC and i ≥ 1, and
/// A@i → w for terminal or empty w. Start symbol is S@ℓ.
Cfg build_G_ell(const Cfg& g, std::size_t ell);

struct LinearDecomposition {
  /// Linear grammar over T ∪ {A@i | i < k} with nonterminals A@k.
  Cfg linear;
  /// G^[k]; σ(A@i) is its language from A@i.
  Cfg indexed;
  std::map<Symbol, Symbol> sigma;
  std::size_t k = 0;
};

/// σ(L(linear)) = L_{k+1}(g).
LinearDecomposition decompose_finite_index(const Cfg& g, std::size_t k);
/// Truncated σ-sets of a decomposition, usable as a Substitution.
Substitution decomposition_substitution(const LinearDecomposition& d, std::size_t max_len);

/// At most one nonterminal per right-hand side.
bool is_linear(const Cfg& g);
/// Every production is A → x₁ B x₂ with x₁, x₂ ∈ T ∪ {ε}, or A → ε.
bool is_linear_normal_form(const Cfg& g);
Cfg to_linear_normal_form(const Cfg& g);

struct LinearDerivation {
  /// Finite automaton over production names `p0`, `p1`, ... whose states
  /// are the nonterminals plus one final sink; accepts exactly the
  /// production sequences of complete derivations.
  ValenceAutomaton automaton;
  std::vector<Production> productions;
  Morphism g1, g2;
};

LinearDerivation linear_derivation_language(const Cfg& g);
/// {g₁(w) g₂(wᴿ) | w ∈ words}.
WordSet derivation_image(const LinearDerivation& d, const WordSet& words);

/// Production whose right-hand side is a finite word set or a valence
/// automaton over N ∪ T.
struct VgProduction {
  Symbol lhs;
  std::optional<WordSet> words;
  std::optional<ValenceAutomaton> automaton;
};

struct ValenceGrammar {
  std::vector<Symbol> nonterminals;
  std::vector<VgProduction> productions;
  Symbol start;

  bool is_nonterminal(const Symbol& s) const;
  std::vector<Symbol> terminals() const;
};

/// Cfg syntax plus `A -> @automaton <path>` or an inline `@automaton { ... }`.
ValenceGrammar parse_valence_grammar(std::string_view source,
                                     const std::filesystem::path& base_dir = {});
ValenceGrammar load_valence_grammar(const std::filesystem::path& path);
std::string format_valence_grammar(const ValenceGrammar& g);
ValenceGrammar to_valence_grammar(const Cfg& g);

/// Fixpoint generation; automaton right-hand sides are enumerated with the
/// current nonterminal languages substituted in.
Enumeration generate(const ValenceGrammar& g, std::size_t max_len, std::size_t run_bound,
                     std::size_t store_bound);

}  // namespace valence

#endif  // VALENCE_GRAMMAR_HPP
