#pragma once

#include <string>
#include <vector>

namespace speechre::cli {

/// exit_code: 0 success, 1 operation/validation failure, 2 usage error.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one subcommand. args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

inline constexpr const char* kSeedEnv = "SPEECHRE_SEED";

}  // namespace speechre::cli
