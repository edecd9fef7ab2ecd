#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgkac {

/// Runs the command line `args` (without the program name). Results go to
/// `out`; on any error a JSON object {"error": {"kind", "message"}} is
/// written to `out` and a nonzero status returned. `validate` returns 1
/// when a check fails; other errors return 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

} // namespace lgkac
