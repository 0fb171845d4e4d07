// cli.hpp: subcommand dispatch for the girthforge tool.
//
// Exit codes: 0 success, 1 a check failed (or a generate run froze),
// 2 usage or precondition error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace girthforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace girthforge::cli
