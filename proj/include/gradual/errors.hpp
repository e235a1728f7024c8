#pragma once

// Error taxonomy shared by the whole library.  The `kind` distinguishes
// bad user input from failed mathematical cross-checks and from internal
// inconsistencies; the CLI maps these onto distinct exit codes.

#include <stdexcept>
#include <string>

namespace gradual {

enum class ErrorKind {
  // input / contract problems (CLI exit 1)
  InvalidInput,
  ShapeMismatch,
  NotMaurerCartan,
  TruncationRequired,
  // internal consistency failures: these mean the library caught itself
  // producing something impossible (CLI exit 3)
  CompositionNonzero,
  NotClosed,
  TransferInconsistent,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  ErrorKind kind;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace gradual
