#include <CLI11.hpp>

#include "carlab/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"carleman-lab: numerical checks for weighted estimates of polyharmonic operators"};
    app.require_subcommand(1);

    carlab::CliOptions opts;
    const std::vector<std::string> commands{"exponents",   "ibp-verify",      "carleman-check",
                                            "three-ball",  "vanishing-order", "caccioppoli",
                                            "infinity",    "report"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        if (name != "report")
            sub->add_option("--config", opts.config_path, "experiment config file")->required();
        else
            sub->add_option("--config", opts.config_path, "unused for report");
        sub->add_option("--jobs", opts.jobs, "worker pool size");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->callback([&opts, name]() { opts.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return carlab::run_command(opts);
}
