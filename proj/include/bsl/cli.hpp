#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsl {

// Entry point shared by the binary and the tests. `args` excludes argv[0];
// reports/CSV go to `out` (or to --out FILE when given), diagnostics to
// `err`. Returns the process exit code: 0 success, 2 input error, 3 geometry
// error, 4 numerics error (including unresolved scan asymptotics), 1
// internal invariant failure or unexpected exception.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bsl
