#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rmap {

// Entry point of the `rmap` tool, without the program name in args.
// Exit codes: 0 expectations met, 1 an expectation not met, 2 scenario or
// usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmap
