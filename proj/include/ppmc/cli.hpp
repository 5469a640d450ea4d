#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppmc {

/// Process exit codes.
enum ExitCode : int {
    kExitAgreement = 0,     // every verdict matches the theorem / all checks pass
    kExitDisagreement = 1,  // a verdict or check disagrees
    kExitUsage = 2,         // invalid flags or arguments
    kExitWriteFailure = 3,  // the report could not be written
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "PPMC_OUTPUT_DIR";

/// Parses "a..b" or "a" into an inclusive range.
std::pair<unsigned, unsigned> parseRange(const std::string& text);

/// Entry point shared by the executable and the tests. Reports go to `out`
/// unless an output path (flag or environment) is set; diagnostics go to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppmc
