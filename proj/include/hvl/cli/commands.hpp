#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hvl::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,       // I/O, parse or parameter error
  kExitHypothesis = 2,  // criterion hypotheses fail or criterion not met
  kExitNumerical = 3,   // quadrature, resolution or scan-quality failure
  kExitFinding = 4,     // valence/oracle inconsistency or sweep candidates
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless a file is requested; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hvl::cli
