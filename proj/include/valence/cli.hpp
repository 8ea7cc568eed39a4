#ifndef VALENCE_CLI_HPP
#define VALENCE_CLI_HPP

#include <string>
#include <vector>

namespace valence {

/// Exit 0 when the query was answered (the verdict is in the output), 1 on an
/// internal failure, 2 on a usage or load error with a one-line reason.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// argv without the program name.
CommandResult dispatch(const std::vector<std::string>& args);

}  // namespace valence

#endif  // VALENCE_CLI_HPP
