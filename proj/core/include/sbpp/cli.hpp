#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `sbpp` tool. `args` excludes the program name.
/// Diagnostics go to `err` as one line; normal progress to `out`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int main(int argc, char** argv);

}  // namespace sbpp::cli
