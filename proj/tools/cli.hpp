#pragma once

#include <iosfwd>

namespace equidivide {

// Runs the command line tool. Exit codes: 0 success, 1 verification
// failed, 2 malformed input, 3 precondition violated, 4 a construction
// failed where it should not.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace equidivide
