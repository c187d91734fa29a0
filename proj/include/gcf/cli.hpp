#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcf::cli {

/// Entry point of the `gcf` tool; `args` excludes the program name.
/// Returns 0 on success, 1 on a runtime or verification failure, 2 on a
/// usage error.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcf::cli
