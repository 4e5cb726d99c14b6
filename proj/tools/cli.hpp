#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2 };

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circlab::cli
