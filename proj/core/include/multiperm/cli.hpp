#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multiperm::cli {

// Runs the multiperm command line (subcommands: count, enumerate, verify,
// analyze, exists, estimate). Exit codes: 0 success, 1 verification or
// consistency failure, 2 usage error, 3 unsupported size.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Same, args without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multiperm::cli
