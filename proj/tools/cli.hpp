#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freering::cli {

/// Runs one command line (without the program name). Writes a single JSON
/// document to `out` and returns the exit code: 0 on success, 1 on a domain
/// error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::istream& in);

}  // namespace freering::cli
