#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftlab::cli {

/// Runs one CLI invocation. Exit codes: 0 all checks pass, 1 a verification
/// or domain-level check failed, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftlab::cli
