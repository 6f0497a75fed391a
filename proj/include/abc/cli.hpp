#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abc {

// Runs one command-line invocation (args excludes the program name) and
// writes results to the given streams. Returns the process exit code:
//   0  computed / audit passed
//   1  audit failed (a witness was emitted) or replay mismatch
//   2  usage or parse error
//   3  capacity exhausted
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace abc
