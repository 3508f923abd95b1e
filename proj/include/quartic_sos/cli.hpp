#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quartic_sos {

/// Process exit codes of `quartic-sos`.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,          // bad arguments, unparsable form or JSON
  kExitCountMiss = 3,      // counts differ from 63 / 15 / 8
  kExitHypothesis = 4,     // curve singular or form not non-negative
  kExitVerifyFailed = 5,   // a certificate did not verify
};

/// Runs the command line `args` (without the program name). Timings go to
/// `err`; everything on `out` is determined by the arguments and the seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quartic_sos
