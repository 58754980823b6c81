#ifndef HAZARDLAB_CLI_HPP
#define HAZARDLAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hazardlab::cli {

// Exit codes of dispatch.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

// Runs one subcommand; `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hazardlab::cli

#endif  // HAZARDLAB_CLI_HPP
