#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nvb::cli {

/// Runs one command; `args` excludes the program name. Returns the exit
/// status: 0 success, 1 validation failure, 2 parse or I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvb::cli
