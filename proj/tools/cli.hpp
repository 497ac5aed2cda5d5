#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dnt::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitBudget = 4;

/// Runs one `dnt` command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dnt::cli
