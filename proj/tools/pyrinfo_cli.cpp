// Command-line driver for the pyramid-information library.
//
// Exit codes: 0 success, 1 usage error, 2 built-in verification failure
// (the numerical optimizer beat the closed form beyond tolerance).

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pyrinfo/emit.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Eavesdropper information and security thresholds for "
                 "symmetric pyramid ensembles"};

    std::string command;
    std::vector<int> ns;
    std::string lambda_grid;
    std::string d_grid;
    std::string t_grid;
    std::string strategy = "srm";
    std::uint64_t seed = 42;
    int restarts = 16;
    double tol = 1e-10;
    std::string format = "csv";
    std::string out_path;

    app.add_option("--command", command,
                   "What to compute:\n"
                   "  fig2      strategy information against the overlap\n"
                   "  fig3      family information against its parameter\n"
                   "  fig4      optimum-to-square-root ratio with asymptotes\n"
                   "  table1    critical disturbances and key-rate thresholds\n"
                   "  threshold threshold report, or a scan when --d-grid is set\n"
                   "  optimize  numerical optimizer against the closed form (JSON only)")
        ->required()
        ->check(CLI::IsMember(
            {"fig2", "fig3", "fig4", "table1", "threshold", "optimize"}));
    app.add_option("--n", ns, "Alphabet size(s); repeatable")
        ->check(CLI::PositiveNumber);
    app.add_option("--lambda-grid", lambda_grid,
                   "Overlap grid: min:max:steps or a comma list");
    app.add_option("--d-grid", d_grid,
                   "Disturbance grid: min:max:steps or a comma list; rows outside "
                   "an alphabet's admissible range [0, (n-1)/n] are omitted");
    app.add_option("--t-grid", t_grid,
                   "Family parameter grid: min:max:steps or a comma list");
    app.add_option("--strategy", strategy, "Measurement strategy")
        ->check(CLI::IsMember({"srm", "optimal"}));
    app.add_option("--seed", seed, "Optimizer seed");
    app.add_option("--restarts", restarts, "Optimizer restarts")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "Optimizer convergence tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Write output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        pyrinfo::RunConfig config;
        config.command = command;
        config.ns = ns;
        if (!lambda_grid.empty()) config.lambda_grid = pyrinfo::parse_grid(lambda_grid);
        if (!d_grid.empty()) config.d_grid = pyrinfo::parse_grid(d_grid);
        if (!t_grid.empty()) config.t_grid = pyrinfo::parse_grid(t_grid);
        config.strategy = pyrinfo::parse_strategy_name(strategy);
        config.seed = seed;
        config.restarts = restarts;
        config.tol = tol;
        config.format = format;

        const pyrinfo::EmitResult result = pyrinfo::run_command(config);
        const std::string text = pyrinfo::render(config, result);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(out_path);
            if (!file) throw std::runtime_error("cannot open output file: " + out_path);
            file << text;
        }
        if (!result.verified) {
            std::cerr << "verification failed: optimizer exceeded the closed form "
                         "beyond tolerance\n";
            return 2;
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
