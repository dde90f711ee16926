#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rrc {

// Runs the `verify` command line (arguments without the program name).
// Returns 0 when every check passes, 1 on a mismatch and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Every command accepted by run_cli, in the order `all` executes them.
const std::vector<std::string>& cli_commands();

}  // namespace rrc
