// Command-line front end: argument handling, run records and output formatting.

#ifndef BELLPOLY_TOOLS_CLI_HPP
#define BELLPOLY_TOOLS_CLI_HPP

#include "bellpoly/rational.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bellpoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;

struct Config {
    std::filesystem::path cache_dir;
    bool use_cache = true;
    Rational tolerance = dyadic(20);
    std::size_t enumeration_cap = 1'000'000;
    unsigned parallelism = 1;
    bool timing = false;
};

/// Default cache location: $XDG_CACHE_HOME/bellpoly, else ~/.cache/bellpoly, else ./.bellpoly-cache.
std::filesystem::path default_cache_dir();

/// Runs one invocation; args exclude the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellpoly::cli

#endif  // BELLPOLY_TOOLS_CLI_HPP
