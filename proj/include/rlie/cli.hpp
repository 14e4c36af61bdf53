#pragma once

// Command-line front end. Exit codes: 0 every check passed, 1 a check
// failed, 2 usage, parse or size-limit error.

#include <ostream>
#include <string>
#include <vector>

namespace rlie {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlie
