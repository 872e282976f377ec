#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nflab::cli {

enum ExitCode : int { Ok = 0, AssertionFailed = 1, Usage = 2, Numerical = 3 };

/// Runs the nf_lab command line on args (program name excluded).
/// 0 when every check passes, 1 on a failed check or I/O error, 2 on a usage
/// error, 3 when a numerical integration fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace nflab::cli
