#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leaguecast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line (argv[0] included). Output goes to `out` unless
/// --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The download list, season windows and commands that reproduce the
/// Newcastle takeover experiment.
std::string repro_recipe_text();
std::string repro_recipe_json();

}  // namespace leaguecast::cli
