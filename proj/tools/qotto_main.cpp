// qotto — batch simulator for a two-level-system Otto refrigerator driven
// in sudden cycles between two heat baths.
//
//   qotto simulate --config run.json            one limit-cycle solution
//   qotto sweep    --config run.json            1-2 axis parameter sweep
//   qotto rates    --config run.json            resonator-filtered bath rates
//   qotto compare  --config run.json            all three protocols side by side
//
// Results go to the path in the config (or --output); "-" means stdout.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qotto/commands.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output_override;
    std::string format_override;
    bool si = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", args.output_override, "output path ('-' for stdout)");
    cmd->add_option("--format", args.format_override, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--si", args.si, "emit SI columns (uses si.reference_kelvin from the config)");
}

qotto::cli::RunConfig resolve_config(const CommonArgs& args) {
    qotto::cli::RunConfig cfg = qotto::cli::load_config(args.config_path);
    if (!args.output_override.empty()) cfg.output.path = args.output_override;
    if (!args.format_override.empty())
        cfg.output.format = args.format_override == "json" ? qotto::cli::OutputFormat::Json
                                                           : qotto::cli::OutputFormat::Csv;
    if (args.si) cfg.si.enabled = true;
    return cfg;
}

int write_output(const qotto::cli::RunConfig& cfg, const std::string& text) {
    if (cfg.output.path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << cfg.output.path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-level-system sudden Otto refrigerator simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    std::function<std::string(const qotto::cli::RunConfig&)> runner;

    auto* simulate = app.add_subcommand("simulate", "solve one limit cycle");
    add_common(simulate, args);
    simulate->callback([&] { runner = qotto::cli::run_simulate; });

    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    add_common(sweep, args);
    sweep->callback([&] { runner = qotto::cli::run_sweep; });

    auto* rates = app.add_subcommand("rates", "tabulate bath transition rates");
    add_common(rates, args);
    rates->callback([&] { runner = qotto::cli::run_rates; });

    auto* compare = app.add_subcommand("compare", "run all protocols on identical rates");
    add_common(compare, args);
    compare->callback([&] { runner = qotto::cli::run_compare; });

    CLI11_PARSE(app, argc, argv);

    try {
        const qotto::cli::RunConfig cfg = resolve_config(args);
        return write_output(cfg, runner(cfg));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
