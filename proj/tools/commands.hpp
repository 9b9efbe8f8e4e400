#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pecd::cli {

// Parses arguments and runs one subcommand. Returns the process exit code:
// 0 success, 1 validation error, 2 numerical failure, 3 verification checks failed.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace pecd::cli
