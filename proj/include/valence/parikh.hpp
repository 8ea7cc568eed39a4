#ifndef VALENCE_PARIKH_HPP
#define VALENCE_PARIKH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/symbols.hpp"

namespace valence {

/// Letter counts; symbols with count zero are omitted, so equality is
/// equality of vectors over any ambient alphabet.
using ParikhVector = std::map<Symbol, std::uint64_t>;
using ParikhSet = std::set<ParikhVector>;

ParikhVector parikh(const Word& w);
ParikhSet parikh_set(const WordSet& words);
ParikhVector operator+(const ParikhVector& a, const ParikhVector& b);
std::size_t total(const ParikhVector& v);

/// `(a:2,b:1)`; symbols in `order` first, then any others.
std::string format_parikh(const ParikhVector& v, const Alphabet& order = {});
ParikhVector parse_parikh(std::string_view text);

struct LinearSet {
  ParikhVector base;
  std::vector<ParikhVector> periods;
};

struct SemilinearSet {
  Alphabet alphabet;
  std::vector<LinearSet> components;
};

/// Lines `component base=(a:1,b:0) periods=[(a:1,b:1)]`, plus an optional
/// `alphabet:` line. Zero periods are dropped.
SemilinearSet parse_semilinear(std::string_view source);
SemilinearSet load_semilinear(const std::filesystem::path& path);
std::string format_semilinear(const SemilinearSet& s);

bool semilinear_member(const ParikhVector& v, const SemilinearSet& s);

/// Adds a looped vertex per input symbol, joined to everything, and counts
/// each read symbol on it; a final check debits one linear component's base
/// and any multiple of its periods. Accepts h(L(a) ∩ Ψ⁻¹(s)).
ValenceAutomaton homsli_automaton(const ValenceAutomaton& a, const SemilinearSet& s,
                                  const Morphism& h);

}  // namespace valence

#endif  // VALENCE_PARIKH_HPP
