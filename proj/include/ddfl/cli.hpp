#pragma once

#include <string>
#include <vector>

namespace ddfl {

// Full command-line front end. Exit codes: 0 ok, 2 config error,
// 3 pe-violation, 4 divergence, 5 I/O failure.
int run_cli(int argc, const char* const* argv);

// Same, for tests: args without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace ddfl
