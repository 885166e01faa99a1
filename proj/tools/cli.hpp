#ifndef KEX_TOOLS_CLI_HPP
#define KEX_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kex {

// The `kex` command line: gen | run | stats | deviate | approx.
// Returns 0 on success, 1 on usage/input errors, 2 on invariant violations
// (for example an exact approximation ratio above 2). Diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kex

#endif
