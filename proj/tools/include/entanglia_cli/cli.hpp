#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace entanglia::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kSolverFailure = 3, kVerdict = 10 };

struct Environment {
  std::optional<std::string> seed;  // ENTANGLIA_SEED
  bool timing = true;
};

Environment environment_from_process();

// args excludes the program name. Input files named "-" or omitted are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace entanglia::cli
