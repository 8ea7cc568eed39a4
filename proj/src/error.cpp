#include "valence/error.hpp"

namespace valence {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::MalformedWord: return "MalformedWord";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::NotDecidable: return "NotDecidable";
    case ErrorKind::NotCNF: return "NotCNF";
    case ErrorKind::NotLinearNormalForm: return "NotLinearNormalForm";
    case ErrorKind::MalformedRHS: return "MalformedRHS";
    case ErrorKind::TrivialM: return "TrivialM";
    case ErrorKind::NotC4P4: return "NotC4P4";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CounterMismatch: return "CounterMismatch";
    case ErrorKind::IndexTooSmall: return "IndexTooSmall";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace valence
