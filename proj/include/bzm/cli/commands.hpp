#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bzm/cli/config.hpp"

namespace bzm {

/// Exit codes: 0 success, 1 error (message on stderr, manifest status
/// "error"), 2 run stopped by the continuation monitor.
int run_command(const std::string& command, Config cfg, std::optional<std::uint64_t> seed, const std::string& out_dir);

const std::vector<std::string>& command_names();

}  // namespace bzm
