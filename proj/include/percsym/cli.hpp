#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace percsym {

// Runs one command line (args[0] is the program name). The human report
// goes to `out`, errors to `err`. Returns the process exit code:
// 0 pass, 1 violation, 2 inconclusive, 3 precondition or symmetry failure,
// 4 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace percsym
