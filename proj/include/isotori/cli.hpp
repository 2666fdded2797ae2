#pragma once

// Command-line front end.  Exit codes: 0 success or affirmative verdict,
// 1 negative or inconclusive verdict, 2 usage or input error, 3 internal
// verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace isotori {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isotori
