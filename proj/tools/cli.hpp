#ifndef SRL_TOOLS_CLI_HPP
#define SRL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace srl::cli {

/// Exit codes: 0 success, 1 usage or configuration error, 2 data or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace srl::cli

#endif  // SRL_TOOLS_CLI_HPP
