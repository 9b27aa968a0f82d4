#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace saw::cli {

// The whole command-line surface, callable in-process. args excludes the
// program name. Returns the process exit code: 0 success, 1 failed
// checks or a rejected certificate, 2 malformed flags or invalid input.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace saw::cli
