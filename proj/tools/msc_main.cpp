#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msc/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Matrix-scaled consensus analysis and simulation"};
    app.require_subcommand(1);

    std::string analyze_scenario;
    CLI::App* analyze = app.add_subcommand("analyze", "Spectral report for a scenario");
    analyze->add_option("scenario", analyze_scenario, "Scenario JSON file")->required();

    std::string sim_scenario;
    std::string sim_output;
    CLI::App* simulate = app.add_subcommand("simulate", "Integrate a scenario and write outputs");
    simulate->add_option("scenario", sim_scenario, "Scenario JSON file")->required();
    simulate->add_option("-o,--output", sim_output, "Output directory")->required();

    std::string sweep_scenario;
    std::vector<double> sweep_alphas;
    CLI::App* sweep = app.add_subcommand("sweep", "Verdict table over damping gains");
    sweep->add_option("scenario", sweep_scenario, "Scenario JSON file")->required();
    sweep->add_option("--alphas", sweep_alphas, "Comma-separated damping gains")
        ->required()
        ->delimiter(',');

    std::uint64_t seed = 42;
    CLI::App* verify = app.add_subcommand("verify", "Run the randomized invariant suites");
    verify->add_option("--seed", seed, "Master seed for the suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (analyze->parsed()) return msc::cmd_analyze(analyze_scenario, std::cout, std::cerr);
    if (simulate->parsed()) {
        return msc::cmd_simulate(sim_scenario, sim_output, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return msc::cmd_sweep_alpha(sweep_scenario, sweep_alphas, std::cout, std::cerr);
    }
    return msc::cmd_verify(seed, std::cout, std::cerr);
}
