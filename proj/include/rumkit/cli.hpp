#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rumkit::cli {

/// Run the rumkit command line with the given arguments (excluding argv[0]).
/// Reports to `out`/`err`; returns the process exit code (0 success, 1
/// validation error, 2 I/O error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rumkit::cli
