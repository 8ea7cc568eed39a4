#ifndef VALENCE_AUTOMATON_HPP
#define VALENCE_AUTOMATON_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valence/graph.hpp"
#include "valence/symbols.hpp"
#include "valence/word.hpp"

namespace valence {

struct VaEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word input;
  MonoidWord store;
};

/// Finite automaton whose edges also multiply an element of 𝕄Γ. A run
/// accepts when it ends in a final state with the identity in storage.
struct ValenceAutomaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  Graph graph;
  std::vector<VaEdge> edges;
  std::size_t initial = 0;
  std::vector<bool> finals;

  /// Does not check for duplicates; constructions pick unique names.
  std::size_t add_state(const std::string& name, bool final = false);
  /// add_state with a numeric suffix when `base` is taken.
  std::size_t add_fresh_state(const std::string& base, bool final = false);
  std::optional<std::size_t> find_state(std::string_view name) const;
  bool is_final(std::size_t q) const { return finals[q]; }
  void add_edge(std::size_t from, std::size_t to, Word input, MonoidWord store = {});
};

/// `base_dir` resolves `graph: <path>` lines.
ValenceAutomaton parse_automaton(std::string_view source,
                                 const std::filesystem::path& base_dir = {});
ValenceAutomaton load_automaton(const std::filesystem::path& path);
std::string format_automaton(const ValenceAutomaton& a);

/// Replaces each edge reading two or more symbols by a chain of edges that
/// read one symbol each; the storage word stays on the first link.
ValenceAutomaton split_edges(const ValenceAutomaton& a);

enum class Membership { Accept, Reject, Unknown };
std::string_view to_string(Membership m);

struct Enumeration {
  WordSet words;
  /// True iff no branch was cut by the run or storage bound.
  bool complete = true;
  std::size_t configurations = 0;
};

struct BoundedResult {
  enum class Kind { NonemptyWitness, EmptyUpToBound };
  Kind kind = Kind::EmptyUpToBound;
  Word witness;
  std::size_t explored = 0;
  /// For EmptyUpToBound: true when nothing was cut, i.e. the language is empty.
  bool complete = true;

  bool nonempty() const { return kind == Kind::NonemptyWitness; }
};

Membership accepts_bounded(const ValenceAutomaton& a, const Word& w, std::size_t run_bound,
                           std::size_t store_bound);
Enumeration enumerate_bounded(const ValenceAutomaton& a, std::size_t max_len,
                              std::size_t run_bound, std::size_t store_bound);
/// Shortest witness first (by length, then by number of edges).
BoundedResult emptiness_bounded(const ValenceAutomaton& a, std::size_t run_bound,
                                std::size_t store_bound);

/// Symbol substitution applied while enumerating: a symbol with an entry
/// may be replaced by any word of its set; other symbols stand for
/// themselves. Sets are expected to be truncated at max_len.
using Substitution = std::map<Symbol, WordSet>;
Enumeration enumerate_substituted(const ValenceAutomaton& a, const Substitution& sigma,
                                  std::size_t max_len, std::size_t run_bound,
                                  std::size_t store_bound);

/// Storage graph is the join of both graphs, so 𝕄Γ is the direct product.
ValenceAutomaton product_intersection(const ValenceAutomaton& a, const ValenceAutomaton& b);

struct TransducerEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word input;
  Word output;
};

struct Transducer {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> finals;
  std::vector<TransducerEdge> edges;

  std::size_t add_state(const std::string& name, bool final = false);
};

Transducer parse_transducer(std::string_view source);
std::string format_transducer(const Transducer& t);
Transducer identity_transducer(const Alphabet& alphabet);
/// Realizes the morphism h on words over `alphabet`.
Transducer morphism_transducer(const Morphism& h, const Alphabet& alphabet);
/// Realizes h⁻¹: reads h(x) and writes x, for each x in `alphabet`.
Transducer inverse_morphism_transducer(const Morphism& h, const Alphabet& alphabet);

ValenceAutomaton transduce(const ValenceAutomaton& a, const Transducer& t);

/// Applies h to every edge label.
ValenceAutomaton apply_morphism(const ValenceAutomaton& a, const Morphism& h);

/// One state, initial and final, with a loop per generator `v+`/`v-` that
/// reads the generator's name and multiplies it: accepts the identity
/// language of 𝕄Γ.
ValenceAutomaton identity_automaton(const Graph& g);

}  // namespace valence

#endif  // VALENCE_AUTOMATON_HPP
