#ifndef CARLAB_CLI_HPP
#define CARLAB_CLI_HPP

#include <string>

namespace carlab {

struct CliOptions {
    std::string command;
    std::string config_path;
    int jobs = 1;
    std::string out_dir = "out";
};

/// Runs one experiment command. Exit codes: 0 all checks passed, 1 a check
/// failed (the failing CSV path is printed), 2 invalid configuration.
int run_command(const CliOptions& opts);

}  // namespace carlab

#endif
