#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ott::cli {

/// Exit codes: 0 for success and for modeled aborts, 1 for runtime and I/O
/// failures, 2 for invalid configuration.
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Runs ottsim with argv-style arguments. The report goes to `out` as one JSON
/// line; failures go to `err` as one JSON error record.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& subcommand_names();

}  // namespace ott::cli
