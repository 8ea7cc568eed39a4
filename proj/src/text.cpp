#include "text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "valence/error.hpp"

namespace valence::text {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Line> logical_lines(std::string_view source) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    ++number;
    auto content = trim(strip_comment(source.substr(start, end - start)));
    if (!content.empty()) lines.push_back({number, std::string(content)});
    start = end + 1;
  }
  return lines;
}

std::optional<std::string> Attributes::get(const std::string& key) const {
  auto it = named.find(key);
  if (it == named.end()) return std::nullopt;
  return it->second;
}

Attributes parse_attributes(std::string_view s, std::size_t line_number) {
  Attributes attrs;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '=' &&
           s[j] != '"')
      ++j;
    if (j < s.size() && s[j] == '=') {
      std::string key(s.substr(i, j - i));
      ++j;
      std::string value;
      if (j < s.size() && s[j] == '"') {
        auto close = s.find('"', j + 1);
        if (close == std::string_view::npos) fail(line_number, "unterminated quote");
        value = std::string(s.substr(j + 1, close - j - 1));
        j = close + 1;
      } else {
        std::size_t k = j;
        int depth = 0;
        while (k < s.size() &&
               (depth > 0 || !std::isspace(static_cast<unsigned char>(s[k])))) {
          if (s[k] == '(' || s[k] == '[') ++depth;
          if (s[k] == ')' || s[k] == ']') --depth;
          ++k;
        }
        value = std::string(s.substr(j, k - j));
        j = k;
      }
      attrs.named[key] = value;
      i = j;
    } else {
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      attrs.positional.emplace_back(s.substr(i, j - i));
      i = j;
    }
  }
  return attrs;
}

std::vector<std::int64_t> parse_vector(std::string_view s, std::size_t line_number) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail(line_number, "expected a parenthesised vector, got '" + std::string(s) + "'");
  std::vector<std::int64_t> v;
  auto body = trim(s.substr(1, s.size() - 2));
  if (body.empty()) return v;
  for (const auto& part : split(body, ',')) {
    if (part.empty()) fail(line_number, "empty vector entry");
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(line_number, "bad integer '" + part + "'");
    }
  }
  return v;
}

std::string format_vector(const std::vector<std::int64_t>& v, bool signed_form) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if (signed_form && v[i] > 0) out += '+';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto c0 = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(c0) || c0 == '_')) return false;
  for (char ch : name.substr(1)) {
    auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || c == '_' || c == '$')) return false;
  }
  return true;
}

void fail(std::size_t line_number, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_number) + ": " + message);
}

}  // namespace valence::text
