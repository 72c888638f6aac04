#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfs {

// Runs one command (args exclude the program name) and writes the result
// document to out. Returns the process exit code: 0 ok, 2 parse error,
// 3 validation failure, 4 unsupported request, 1 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfs
