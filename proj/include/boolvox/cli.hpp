// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace boolvox {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

/// Everything a subcommand reads; recorded verbatim in every emitted file.
struct RunConfig {
    std::string subcommand;
    double gamma = 0.1;
    std::string radius = "const:1";
    double window = 16;
    std::vector<double> grid_widths;
    std::uint64_t replications = 32;
    std::uint64_t seed = 1;
    int q = 2;
    int class_id = 0;
    std::vector<int> support;
    std::string weights_path;
    std::string out;
    std::string format = "csv";

    std::string describe() const;
};

/// Default seed: $BOOLVOX_SEED when set, else 1.
std::uint64_t default_seed();

/// Entry point of the `boolvox` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boolvox
