#ifndef VALENCE_ERROR_HPP
#define VALENCE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace valence {

enum class ErrorKind {
  Parse,
  MalformedWord,
  AlphabetMismatch,
  NotDecidable,
  NotCNF,
  NotLinearNormalForm,
  MalformedRHS,
  TrivialM,
  NotC4P4,
  DimensionMismatch,
  CounterMismatch,
  IndexTooSmall,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace valence

#endif  // VALENCE_ERROR_HPP
