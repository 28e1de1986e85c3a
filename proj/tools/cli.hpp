#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cps::cli {

// Dispatches one subcommand (gen | density | autocorr | diffract | verify).
// args excludes the program name. Returns the process exit code: 0 ok,
// 1 verification failure, 2 config error, 3 I/O error. Summaries go to
// out, diagnostics to err. Error exits leave no output file behind.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cps::cli
