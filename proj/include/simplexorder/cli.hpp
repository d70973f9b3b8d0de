#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simplexorder {

// Dispatches the CLI subcommands; returns the process exit code
// (0 success, 1 invalid input, 2 internal numerical failure).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simplexorder
