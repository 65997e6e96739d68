#pragma once

#include <stdexcept>
#include <string>

namespace hsim::cli {

enum ExitCode : int { kOk = 0, kAssertion = 1, kUsage = 2, kIo = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Parses "a..b" (inclusive) or a single integer.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);

/// @brief Runs the command line; returns the process exit code.
int run(int argc, char** argv);

}  // namespace hsim::cli
