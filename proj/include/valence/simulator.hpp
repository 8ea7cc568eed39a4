#ifndef VALENCE_SIMULATOR_HPP
#define VALENCE_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/grammar.hpp"
#include "valence/parikh.hpp"
#include "valence/petri.hpp"

namespace valence {

/// A (K,N)-simulator: runs of the machine restricted to zero tests on the
/// counters below the d global ones, from (source, ⟨μ⟩) to (target, ⟨μ′⟩),
/// are Parikh-equivalent to K ∩ L(N, μ, μ′). Counter layout is
/// [aux | forward | backward | global] with aux + 3·dim counters, except for
/// the regular base case, which has only the d global counters.
struct SimulatorHandle {
  PriorityMachine machine;
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t dim = 0;
  std::size_t aux = 0;
  // Bit i of dims[c]: counter c carries dimension i of N (0 for padding).
  std::vector<std::uint32_t> dims;
};

/// Base case: K given by a finite automaton (storage words must be empty).
SimulatorHandle build_simulator(const ValenceAutomaton& nfa, const PetriNet& n);
/// K = L_k(g) for a CNF grammar g and k ≥ 1.
SimulatorHandle build_simulator(const Cfg& g, std::size_t k, const PetriNet& n);

/// Parikh vectors of L_d(A, source, μ, target, μ′) with words ≤ max_len,
/// one set per μ′ in `targets` (ParikhReach::per_target). Counters are
/// capped at values derived from the markings and the transitions of `net`.
ParikhReach simulator_parikh(const SimulatorHandle& h, const PetriNet& net, const Vector& mu,
                             const std::vector<Vector>& targets, std::size_t max_len);
/// Oracle side: Parikh vectors of K ∩ L(N, μ, μ′) for a finite sample of K.
ParikhSet intersection_parikh(const WordSet& k_words, const PetriNet& n, const Vector& mu,
                              const Vector& mu2, std::size_t step_bound);

/// Machine with Ψ(L) = Ψ(K ∩ L(N)): loads μ₀ into the global counters and
/// unloads one final marking of N at the end.
PriorityMachine intersection_machine(const SimulatorHandle& h, const PetriNet& n);
PriorityMachine intersection_machine(const Cfg& g, std::size_t k, const PetriNet& n);
/// Parikh vectors of the intersection machine's words ≤ max_len, with the
/// counter caps of simulator_parikh for N's initial and final markings.
ParikhReach intersection_machine_parikh(const SimulatorHandle& h, const PetriNet& n,
                                        std::size_t max_len);

/// Expression tree over the language hierarchy.
struct RecipeNode {
  enum class Kind { Leaf, Alg, HomSli };
  Kind kind = Kind::Leaf;
  std::string name;
  // leaf
  std::optional<Cfg> cfg;
  std::size_t index = 0;
  std::optional<ValenceAutomaton> nfa;
  std::optional<PetriNet> net;
  Morphism h;
  // alg
  Symbol start;
  std::vector<std::pair<Symbol, std::string>> rules;
  // homsli
  std::string child;
  std::optional<SemilinearSet> sl;
};

struct Recipe {
  std::vector<RecipeNode> nodes;
  std::string root;

  const RecipeNode& node(const std::string& name) const;
};

/// Lines:
///   leaf <name> cfg=<path> index=<k> net=<path> [h=<morphism>]
///   leaf <name> nfa=<path> net=<path> [h=<morphism>]
///   alg <name> start=<S> rules=<A>:<child>,<B>:<child>
///   homsli <name> child=<node> sl=<path> [h=<morphism>]
///   root <name>
/// Paths are relative to `base_dir`.
Recipe parse_recipe(std::string_view source, const std::filesystem::path& base_dir = {});
Recipe load_recipe(const std::filesystem::path& path);

/// Parikh-equivalent priority machine for the recipe's root.
PriorityMachine compile_recipe(const Recipe& r);
/// Bounded emptiness of the compiled machine; a witness is a word
/// Parikh-equivalent to some word of the language.
BoundedResult g_emptiness(const Recipe& r, std::size_t step_bound, std::int64_t counter_bound);

}  // namespace valence

#endif  // VALENCE_SIMULATOR_HPP
