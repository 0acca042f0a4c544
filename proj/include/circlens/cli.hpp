#ifndef CIRCLENS_CLI_HPP
#define CIRCLENS_CLI_HPP

#include <ostream>

namespace circlens {

// Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 verify found a failing check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circlens

#endif  // CIRCLENS_CLI_HPP
