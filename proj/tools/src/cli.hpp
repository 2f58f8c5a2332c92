#pragma once

#include <iosfwd>

namespace xot {

/// Entry point of the `xot` tool. Returns the process exit code: 0 on success,
/// 2 for usage errors, 1 for any other failure (one diagnostic line on err).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace xot
