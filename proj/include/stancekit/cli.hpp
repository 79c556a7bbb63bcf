#ifndef STANCEKIT_CLI_HPP_
#define STANCEKIT_CLI_HPP_

#include <iosfwd>

namespace stancekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand. Messages go to `out`/`err`; artifacts go to the
/// files named on the command line, each with a `<output>.config.json` echo.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stancekit::cli

#endif  // STANCEKIT_CLI_HPP_
