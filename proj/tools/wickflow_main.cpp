#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "wickflow/commands.hpp"

namespace {

void add_spec_options(CLI::App* cmd, wickflow::cli::RunConfig& config, bool spec_required) {
    auto* spec = cmd->add_option("--spec", config.spec_path, "problem spec JSON file");
    if (spec_required) spec->required();
    cmd->add_option("--out", config.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--steps", config.steps, "override the number of time steps");
    cmd->add_option("--trunc", [&config](const std::vector<std::string>& values) {
            int k = 0, p = 0;
            if (std::sscanf(values.back().c_str(), "%d,%d", &k, &p) != 2) return false;
            config.trunc_K = k;
            config.trunc_P = p;
            return true;
        },
        "override the truncation as K,P");
    cmd->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wickflow: truncated chaos-expansion solver for Wick-polynomial evolution equations"};
    app.require_subcommand(1);

    wickflow::cli::RunConfig config;

    CLI::App* run = app.add_subcommand("run", "solve a problem spec and write the report CSVs");
    add_spec_options(run, config, true);

    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    verify->add_option("--suite", config.suite, "suite name (default: all)")->capture_default_str();

    CLI::App* bounds = app.add_subcommand("bounds", "solve and evaluate the a-priori bound certificate");
    add_spec_options(bounds, config, true);

    CLI::App* sample = app.add_subcommand("sample", "solve and Monte-Carlo-check the final field");
    add_spec_options(sample, config, true);
    sample->add_option("--draws", config.draws, "number of Monte-Carlo draws")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : wickflow::cli::kExitUsage;
    }

    if (run->parsed()) return wickflow::cli::cmd_run(config, std::cout);
    if (verify->parsed()) return wickflow::cli::cmd_verify(config, std::cout);
    if (bounds->parsed()) return wickflow::cli::cmd_bounds(config, std::cout);
    if (sample->parsed()) return wickflow::cli::cmd_sample(config, std::cout);
    return wickflow::cli::kExitUsage;
}
