#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qie::cli {

/// Entry point of the `qie` tool. `args` excludes the program name. Returns
/// one of the exit codes in exit_codes.hpp.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qie::cli
