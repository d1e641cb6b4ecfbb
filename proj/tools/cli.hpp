#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace placesim::cli {

/// Process exit codes. Disjoint so shell scripts can branch on outcomes.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kEmptyFeasibleSet = 2,
    kCollision = 3,
    kHorizonAbort = 4,
    kPartialSweep = 5,
    kToleranceExceeded = 6,
};

/// Runs the command line `args` (args[0] is the program name) writing normal output
/// to `out` and diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace placesim::cli
