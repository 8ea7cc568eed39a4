// Line-oriented parsing helpers shared by the file formats.
#ifndef VALENCE_SRC_TEXT_HPP
#define VALENCE_SRC_TEXT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valence::text {

std::string_view trim(std::string_view s);
std::string_view strip_comment(std::string_view line);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with(std::string_view s, std::string_view prefix);

std::string read_file(const std::filesystem::path& path);

/// One logical line of input with its 1-based line number.
struct Line {
  std::size_t number;
  std::string content;
};

/// Comment-stripped, trimmed, non-empty lines.
std::vector<Line> logical_lines(std::string_view source);

/// Parses `key="value"` and `key=value` attributes out of a line tail.
/// Unquoted values end at whitespace. Positional tokens are returned
/// separately in order.
struct Attributes {
  std::vector<std::string> positional;
  std::map<std::string, std::string> named;

  std::optional<std::string> get(const std::string& key) const;
};
Attributes parse_attributes(std::string_view s, std::size_t line_number);

/// `(+1,-1,0)` or `(1, 2)`; an empty vector for `()`.
std::vector<std::int64_t> parse_vector(std::string_view s, std::size_t line_number);
std::string format_vector(const std::vector<std::int64_t>& v, bool signed_form);

bool valid_identifier(std::string_view name);

[[noreturn]] void fail(std::size_t line_number, const std::string& message);

}  // namespace valence::text

#endif  // VALENCE_SRC_TEXT_HPP
