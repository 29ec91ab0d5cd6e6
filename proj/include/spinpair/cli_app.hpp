#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinpair {

/// Exit codes of the spinpair tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,         // bad flags or invalid values
  kExitPhysicsGuard = 2,  // e.g. linewidth >= alpha / 2
  kExitIo = 3,            // output could not be written
};

/// Runs the command line in-process. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinpair
