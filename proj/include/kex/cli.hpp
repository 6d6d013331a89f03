#ifndef KEX_CLI_HPP
#define KEX_CLI_HPP

#include <string>
#include <vector>

namespace kex {

// Runs one CLI invocation. `args` excludes the program name. Returns the
// process exit code: 0 on success, 1 on input errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args);

int run_cli(int argc, const char* const* argv);

} // namespace kex

#endif // KEX_CLI_HPP
