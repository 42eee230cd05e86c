#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace netcast::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kNumericalError = 4 };

/// Full command line (args[0] is the program name). Returns the process exit code.
int run(const std::vector<std::string>& args);

/// Parses flags and the optional --config file into a resolved configuration.
RunConfig resolve(const std::vector<std::string>& args);

/// Executes an already resolved configuration, writing into cfg.out.
int execute(const RunConfig& cfg);

} // namespace netcast::cli
