#include "valence/symbols.hpp"

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

Alphabet::Alphabet(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(s);
}

std::size_t Alphabet::add(const Symbol& s) {
  auto it = index_.find(s);
  if (it != index_.end()) return it->second;
  index_.emplace(s, symbols_.size());
  symbols_.push_back(s);
  return symbols_.size() - 1;
}

bool Alphabet::contains(std::string_view s) const { return index_.find(s) != index_.end(); }

std::size_t Alphabet::index(std::string_view s) const {
  auto it = index_.find(s);
  if (it == index_.end())
    throw Error(ErrorKind::AlphabetMismatch, "symbol '" + std::string(s) + "' not in alphabet");
  return it->second;
}

bool Alphabet::same_set(const Alphabet& other) const {
  if (size() != other.size()) return false;
  for (const auto& s : symbols_)
    if (!other.contains(s)) return false;
  return true;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "-";
  bool single = true;
  for (const auto& s : w) single = single && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single) out += ' ';
    out += w[i];
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  auto tokens = text::split_ws(text);
  if (tokens.size() == 1 && tokens[0] == "-") return w;
  for (const auto& tok : tokens) {
    if (alphabet.contains(tok)) {
      w.push_back(tok);
      continue;
    }
    for (char c : tok) {
      std::string s(1, c);
      if (!alphabet.contains(s))
        throw Error(ErrorKind::AlphabetMismatch, "symbol '" + tok + "' not in alphabet");
    }
    for (char c : tok) w.emplace_back(1, c);
  }
  return w;
}

Word parse_symbols(std::string_view text) {
  auto tokens = text::split_ws(text);
  if (tokens.size() == 1 && tokens[0] == "-") return {};
  return tokens;
}

Word Morphism::apply(const Word& w) const {
  Word out;
  for (const auto& s : w) {
    auto it = images_.find(s);
    if (it == images_.end()) {
      out.push_back(s);
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

Word Morphism::image(const Symbol& s) const {
  auto it = images_.find(s);
  return it == images_.end() ? Word{s} : it->second;
}

Morphism parse_morphism(std::string_view source) {
  Morphism h;
  auto body = text::trim(source);
  if (body.empty() || body == "id") return h;
  std::size_t i = 0;
  while (i < body.size()) {
    auto colon = body.find(':', i);
    if (colon == std::string_view::npos)
      throw Error(ErrorKind::Parse, "morphism entry without ':' in '" + std::string(body) + "'");
    std::string from(text::trim(body.substr(i, colon - i)));
    if (from.empty()) throw Error(ErrorKind::Parse, "morphism entry with empty source symbol");
    std::size_t j = colon + 1;
    Word to;
    if (j < body.size() && body[j] == '{') {
      auto close = body.find('}', j);
      if (close == std::string_view::npos) throw Error(ErrorKind::Parse, "unterminated '{'");
      to = parse_symbols(body.substr(j + 1, close - j - 1));
      j = close + 1;
      while (j < body.size() && body[j] != ',') ++j;
    } else {
      auto comma = body.find(',', j);
      if (comma == std::string_view::npos) comma = body.size();
      auto target = text::trim(body.substr(j, comma - j));
      if (target != "-")
        for (char c : target) to.emplace_back(1, c);
      j = comma;
    }
    h.set(from, to);
    i = j < body.size() ? j + 1 : j;
  }
  return h;
}

std::string format_morphism(const Morphism& h) {
  if (h.identity()) return "id";
  std::string out;
  for (const auto& [from, to] : h.images()) {
    if (!out.empty()) out += ',';
    out += from + ':';
    bool single = true;
    for (const auto& s : to) single = single && s.size() == 1;
    if (to.empty()) {
      out += '-';
    } else if (single) {
      for (const auto& s : to) out += s;
    } else {
      out += '{';
      for (std::size_t i = 0; i < to.size(); ++i) out += (i ? " " : "") + to[i];
      out += '}';
    }
  }
  return out;
}

}  // namespace valence
