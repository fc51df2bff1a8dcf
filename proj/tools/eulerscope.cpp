#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerscope/commands.hpp"
#include "eulerscope/config.hpp"
#include "eulerscope/manifest.hpp"

int main(int argc, char** argv) {
    using namespace eulerscope;
    CLI::App app{"Incompressible Euler simulation and blow-up criteria diagnostics"};
    app.set_version_flag("--version", std::string(kToolkitVersion));
    app.require_subcommand(1);

    std::string config;
    auto* simulate = app.add_subcommand("simulate", "run the solver and monitor from a configuration file");
    simulate->add_option("--config", config, "configuration file")->required();

    AnalyzeOptions analyze_opts;
    std::string triplet;
    auto* analyze = app.add_subcommand("analyze", "recompute criteria from stored snapshots");
    analyze->add_option("--input", analyze_opts.inputs, "snapshot directory or files")->required();
    analyze->add_option("--triplet", triplet, "slab triplet transition a,b");
    analyze->add_option("--output", analyze_opts.output, "output directory");

    std::string suite;
    std::size_t n = 32;
    std::uint64_t seed = 7;
    auto* verify = app.add_subcommand("verify", "run identity and inequality suites on manufactured fields");
    verify->add_option("--suite", suite, "identities, constants, chart, hardy, triplet or all")->required();
    verify->add_option("--n", n, "grid nodes per axis (at least 8)");
    verify->add_option("--seed", seed, "random seed");

    std::string series;
    auto* report = app.add_subcommand("report", "regenerate plots and summary from a series CSV");
    report->add_option("--series", series, "series.csv from a previous run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "eulerscope: " << e.what() << "\n";
        return kExitUsage;
    }

    if (simulate->parsed()) return cmd_simulate(config, std::cout, std::cerr);
    if (analyze->parsed()) {
        if (!triplet.empty()) {
            try {
                analyze_opts.triplet = parse_pair(triplet);
            } catch (const Error& e) {
                std::cerr << "eulerscope analyze: --triplet: " << e.what() << "\n";
                return kExitUsage;
            }
        }
        return cmd_analyze(analyze_opts, std::cout, std::cerr);
    }
    if (verify->parsed()) return cmd_verify(suite, n, seed, std::cout, std::cerr);
    return cmd_report(series, std::cout, std::cerr);
}
