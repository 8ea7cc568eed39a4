#ifndef VALENCE_SYMBOLS_HPP
#define VALENCE_SYMBOLS_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace valence {

/// Input symbols are strings so that constructions can mint fresh symbols
/// such as `A@1` or `[`; words are sequences of them.
using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Orders words by length first, then lexicographically.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordSet = std::set<Word, ShortLex>;

/// Ordered, duplicate-free list of symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  /// Returns the index of `s`, inserting it when absent.
  std::size_t add(const Symbol& s);
  bool contains(std::string_view s) const;
  std::size_t index(std::string_view s) const;  // throws AlphabetMismatch
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  /// Same symbol set, ignoring order.
  bool same_set(const Alphabet& other) const;

 private:
  std::vector<Symbol> symbols_;
  std::map<Symbol, std::size_t, std::less<>> index_;
};

/// `-` for the empty word; symbols are concatenated when every symbol is a
/// single character and space-separated otherwise.
std::string format_word(const Word& w);

/// Splits on whitespace. A token that is not a member of `alphabet` is split
/// into characters when each character is a symbol; otherwise the word is
/// rejected with AlphabetMismatch. `-` denotes the empty word.
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// Whitespace-separated symbols taken verbatim; `-` denotes the empty word.
Word parse_symbols(std::string_view text);

/// A letter-to-word morphism. Symbols without an entry map to themselves.
class Morphism {
 public:
  Morphism() = default;
  void set(const Symbol& from, Word to) { images_[from] = std::move(to); }
  Word apply(const Word& w) const;
  Word image(const Symbol& s) const;
  bool has(const Symbol& s) const { return images_.count(s) != 0; }
  bool identity() const { return images_.empty(); }
  const std::map<Symbol, Word>& images() const { return images_; }

 private:
  std::map<Symbol, Word> images_;
};

/// Parses `a:xy,b:-` (targets use the single-character convention of
/// format_word, or `{x y}` for multi-character symbols).
Morphism parse_morphism(std::string_view text);
std::string format_morphism(const Morphism& h);

}  // namespace valence

#endif  // VALENCE_SYMBOLS_HPP
