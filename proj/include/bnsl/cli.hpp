#ifndef BNSL_CLI_HPP
#define BNSL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bnsl::cli {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 1 on data/config errors, 2 on usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnsl::cli

#endif
