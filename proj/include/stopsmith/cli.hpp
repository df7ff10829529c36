#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stopsmith::cli {

// Runs the command line (args exclude the program name) writing results to
// `out` and diagnostics to `err`. Returns the process exit code: 0 on
// success, nonzero on usage or library errors, with a machine-parsable
// {error, message} record on the error stream in json mode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stopsmith::cli
