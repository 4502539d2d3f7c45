#pragma once

#include <iosfwd>

#include "p3p/error.hpp"

namespace p3p {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitValidation = 2,
  kExitOnToroid = 3,
  kExitDegeneratePath = 4,
  kExitViolation = 5,
};

int exit_code_for(ErrorKind kind);

/// Entry point of the `p3p` tool; reports go to `out` (unless --out is given),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace p3p
