#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgr::cli {

// Runs one subcommand; args exclude the program name. Returns the process
// exit code: 0 for success or a passing check, 1 for a clean negative
// verdict (not separated, not DAG-isomorphic), 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sgr::cli
