#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadlab {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // property failure, unexpected outcome
inline constexpr int kExitUsage = 2;    // usage or parse error

/// Runs one command line (without the program name). Wherever a FILE is
/// expected, "catalog:NAME" names a built-in table.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default location of the report expectations file.
[[nodiscard]] std::string default_expectations_path();

}  // namespace quadlab
