#ifndef QLAB_CLI_HPP
#define QLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qlab {

// Executes one command line (program name excluded) and writes the JSON
// report to `out`, or to the file named by --out.  Returns the process exit
// code: 0 for success and passing checks, 1 for computational failures or a
// failing verification, 2 for usage errors.  Reentrant; owns no state.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlab

#endif
