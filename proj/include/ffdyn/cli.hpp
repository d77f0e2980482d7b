#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ffdyn/ensemble.hpp"

namespace ffdyn {

/// Parsed command line / config file. Range fields are inclusive.
struct RunConfig {
    std::string subcommand;
    std::uint32_t p = 3;
    int j_lo = 1, j_hi = 1;
    int d = 2;
    int d_lo = 2, d_hi = 2;
    MapKind kind = MapKind::rational;
    int n = 1;
    int n_lo = 1, n_hi = 1;
    std::string mode = "auto";  // auto | exhaustive | sampled
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string out;  // empty = stdout
    int workers = 1;
    std::uint64_t budget = 20000000;
    std::string map_text;
    bool survey = false;
    std::string method = "recursion";  // fix-wreath: recursion | bruteforce

    /// Canonical one-line echo of every field the subcommand consumes;
    /// embedded in the CSV comment line.
    std::string echo() const;
};

/// Runs one subcommand, writing the CSV to `out` and warnings to `diag`.
/// Returns the process exit code (0 ok, 2 validation, 3 budget).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Full CLI: parse (with optional --config key=value file; flags override),
/// open the output, dispatch. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace ffdyn
