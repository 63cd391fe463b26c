#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syncpersist::cli {

/// Runs one subcommand. `args` excludes the program name. Returns the process
/// exit code: 0 on success, 1 on usage or validation errors, 2 on runtime
/// failures.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:count" (inclusive endpoints) or a single number.
std::vector<double> parse_range(const std::string& text);

} // namespace syncpersist::cli
