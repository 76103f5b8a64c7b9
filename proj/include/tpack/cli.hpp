#ifndef TPACK_CLI_HPP
#define TPACK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tpack {

/// Runs one CLI invocation. Results go to `out`, diagnostics to `err`.
/// Exit status: 0 success, 1 usage/internal error, 2 precondition or premise
/// failure (machine-readable witness on the error stream), 3 unstabilized or
/// unknown within the radius budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpack

#endif
