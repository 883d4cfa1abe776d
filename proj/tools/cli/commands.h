#ifndef HMMNER_TOOLS_CLI_COMMANDS_H_
#define HMMNER_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace hmmner::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kDegenerateCorpus = 3,
  kModelError = 4,
  kEvalMismatch = 5,
};

// Runs `hmmner <args...>` (program name excluded) and returns the exit
// status. Normal output goes to `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hmmner::cli

#endif  // HMMNER_TOOLS_CLI_COMMANDS_H_
