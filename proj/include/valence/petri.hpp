#ifndef VALENCE_PETRI_HPP
#define VALENCE_PETRI_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/parikh.hpp"
#include "valence/symbols.hpp"

namespace valence {

using Vector = std::vector<std::int64_t>;

struct PetriTransition {
  std::optional<Symbol> label;  // nullopt is ε
  Vector delta;
};

/// d-dimensional labelled Petri net with an initial marking and a finite
/// list of final markings.
struct PetriNet {
  Alphabet alphabet;
  std::size_t dim = 0;
  std::vector<PetriTransition> transitions;
  Vector initial;
  std::vector<Vector> finals;
};

/// `dim: d`, `init: (..)`, `final: (..) (..)`, `trans <label|-> (+1,-1,..)`,
/// optional `alphabet:`.
PetriNet parse_petri(std::string_view source);
PetriNet load_petri(const std::filesystem::path& path);
std::string format_petri(const PetriNet& n);

/// Words w with from →w to, of length ≤ max_len, using ≤ step_bound firings.
Enumeration petri_enumerate(const PetriNet& n, const Vector& from, const Vector& to,
                            std::size_t max_len, std::size_t step_bound);

/// The same language as a valence automaton over 𝔹^d (one unlooped vertex
/// per place, all adjacent): it preloads `from` and finally removes `to`.
ValenceAutomaton petri_to_valence(const PetriNet& n, const Vector& from, const Vector& to);

struct PrioEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word input;
  /// The edge needs counters 1..ztest to be zero before it fires.
  std::size_t ztest = 0;
  Vector delta;
};

/// Priority multicounter machine: partially blind counters plus zero tests
/// on counter prefixes. Accepts in a final state with all counters zero.
struct PriorityMachine {
  std::vector<std::string> states;
  Alphabet alphabet;
  std::size_t counters = 0;
  std::vector<PrioEdge> edges;
  std::size_t initial = 0;
  std::vector<bool> finals;

  /// Does not check for duplicates; constructions pick unique names.
  std::size_t add_state(const std::string& name, bool final = false);
  std::optional<std::size_t> find_state(std::string_view name) const;
  /// A short delta is padded with zeros.
  void add_edge(std::size_t from, std::size_t to, Word input, std::size_t ztest = 0,
                Vector delta = {});
};

/// `counters: k` plus the automaton header lines and
/// `edge p q in=".." ztest=l delta=(..)`.
PriorityMachine parse_machine(std::string_view source);
PriorityMachine load_machine(const std::filesystem::path& path);
std::string format_machine(const PriorityMachine& m);

PriorityMachine split_edges(const PriorityMachine& m);
PriorityMachine apply_morphism(const PriorityMachine& m, const Morphism& h);

/// Parikh vectors of words read between two configurations.
struct ReachQuery {
  std::size_t from_state = 0;
  Vector from;
  /// Target states; the counters must equal one of the valuations in `to`.
  std::vector<std::size_t> to_states;
  std::vector<Vector> to;
  /// Edges testing more than this many counters are ignored (the L_d
  /// restriction uses counters − d).
  std::size_t max_ztest = static_cast<std::size_t>(-1);
  std::size_t max_len = 6;
  /// Per-counter caps; configurations above a cap are cut.
  Vector caps;
};

struct ParikhReach {
  ParikhSet vectors;
  /// Vectors per target valuation, in the order of ReachQuery::to.
  std::vector<ParikhSet> per_target;
  bool complete = true;
  std::size_t configurations = 0;
};

ParikhReach prio_parikh_reach(const PriorityMachine& m, const ReachQuery& q);
/// Parikh image of L(m) up to max_len, every counter capped at counter_bound.
ParikhReach prio_parikh_image(const PriorityMachine& m, std::size_t max_len,
                              std::int64_t counter_bound);
Enumeration prio_enumerate(const PriorityMachine& m, std::size_t max_len, std::size_t step_bound,
                           std::int64_t counter_bound);
BoundedResult prio_emptiness_bounded(const PriorityMachine& m, std::size_t step_bound,
                                     std::int64_t counter_bound);

/// Replaces each symbol x with a copy of σ(x), run on ℓ new low counters;
/// the outer machine moves up by ℓ counters.
PriorityMachine substitution_compose(const PriorityMachine& m,
                                     const std::map<Symbol, PriorityMachine>& sigma);
/// Accepts h(L(m) ∩ Ψ⁻¹(s)) using one appended counter per symbol.
PriorityMachine presburger_close(const PriorityMachine& m, const SemilinearSet& s,
                                 const Morphism& h);

/// Machine for {w}, with no counters.
PriorityMachine word_machine(const Word& w);

}  // namespace valence

#endif  // VALENCE_PETRI_HPP
