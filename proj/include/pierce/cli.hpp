#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pierce {

// Runs one command; `args` excludes the program name. Returns 0 on success,
// 1 on a failed verification or pipeline error, 2 on usage errors and
// unreadable input.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads PIERCE_LOG_LEVEL (error, info, debug) and configures the logger.
void configure_logging();

}  // namespace pierce
