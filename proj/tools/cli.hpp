#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgue::cli {

enum ExitCode { ok = 0, verify_failed = 1, usage = 2, precision = 3, internal = 4 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sgue::cli
