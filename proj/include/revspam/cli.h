#ifndef REVSPAM_CLI_H_
#define REVSPAM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace revspam {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBadInput = 2,
  kExitLoadFailure = 3,
};

// Entry point behind the revspam binary. `args` excludes the program name.
// Subcommands: classify, evaluate, tune, check-ontology. Failures write one
// JSON object line to `err`:
//   {"error":"<Kind>","exit":<code>,"line":<n>,"message":"..."}
// where "line" appears only for line-addressable input errors.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace revspam

#endif  // REVSPAM_CLI_H_
