#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with captured streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace parataur::cli {

// Exit codes: 0 for a definite answer, 2 for Unknown, 1 for errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parataur::cli
