#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpagrade {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResourceLimit = 3;

/// Runs one `lpa-grade` invocation. `args` excludes the program name.
/// Reports go to `out`, diagnostics and usage to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpagrade
