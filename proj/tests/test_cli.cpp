#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "pyrinfo/emit.hpp"
#include "pyrinfo/golden.hpp"

using namespace pyrinfo;
using Catch::Approx;

TEST_CASE("grid parsing handles ranges, lists, and single values") {
    const auto range = parse_grid("0:1:5");
    REQUIRE(range.size() == 5);
    CHECK(range.front() == 0.0);
    CHECK(range[2] == Approx(0.5).margin(1e-15));
    CHECK(range.back() == 1.0);

    const auto list = parse_grid("0.1,0.2,0.77276");
    REQUIRE(list.size() == 3);
    CHECK(list[2] == Approx(0.77276));

    const auto single = parse_grid("0.5");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 0.5);

    const auto degenerate = parse_grid("0.3:0.3:1");
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0] == 0.3);
}

TEST_CASE("grid parsing rejects malformed specs") {
    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:2:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:0:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:2.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0.1,,0.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0.1,0.2x"), std::invalid_argument);
}

TEST_CASE("linspace hits both endpoints exactly") {
    const auto grid = linspace(0.0, 0.99, 100);
    REQUIRE(grid.size() == 100);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 0.99);
    CHECK(grid[1] == Approx(0.01).margin(1e-15));
    CHECK(linspace(0.7, 0.7, 1) == std::vector<double>{0.7});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("percent formatting rounds half to even at fixed decimals") {
    // 1/16 and 3/16 are exact in binary, so the ties are genuine.
    CHECK(format_percent(0.0625, 1) == "6.2");
    CHECK(format_percent(0.1875, 1) == "18.8");
    CHECK(format_percent(0.0, 1) == "0.0");
    CHECK(format_percent(1.0, 1) == "100.0");
    CHECK(format_percent(0.864864864864864865, 1) == "86.5");
    CHECK(format_percent(0.349713276, 4) == "34.9713");
    CHECK(format_percent(0.5, 0) == "50");
    CHECK(format_percent(-0.015625, 2) == "-1.56");
    CHECK_THROWS_AS(format_percent(0.5, -1), std::invalid_argument);
    CHECK_THROWS_AS(format_percent(0.5, 10), std::invalid_argument);
}

TEST_CASE("strategy names round-trip") {
    CHECK(parse_strategy_name("srm") == Strategy::srm);
    CHECK(parse_strategy_name("optimal") == Strategy::optimal);
    CHECK(std::string(strategy_name(Strategy::srm)) == "srm");
    CHECK(std::string(strategy_name(Strategy::optimal)) == "optimal");
    CHECK_THROWS_AS(parse_strategy_name("best"), std::invalid_argument);
}

TEST_CASE("fig2 emits one row per alphabet and overlap") {
    RunConfig config;
    config.command = "fig2";
    config.ns = {2, 3};
    config.lambda_grid = {0.0, 0.5};
    const EmitResult result = run_command(config);

    REQUIRE(result.table.columns ==
            std::vector<std::string>{"n", "lambda", "information"});
    REQUIRE(result.table.rows.size() == 4);
    REQUIRE(result.rows.size() == 4);
    CHECK(result.rows[0]["n"] == 2);
    CHECK(result.rows[0]["lambda"] == 0.0);
    CHECK(double(result.rows[0]["information"]) == Approx(1.0).margin(1e-12));
    CHECK(double(result.rows[1]["information"]) ==
          Approx(srm_information(make_pyramid(2, 0.5))).margin(1e-14));
    CHECK(result.config["strategy"] == "srm");

    config.strategy = Strategy::optimal;
    const EmitResult optimal = run_command(config);
    CHECK(double(optimal.rows[3]["information"]) ==
          Approx(optimum(make_pyramid(3, 0.5)).i_max).margin(1e-14));
    CHECK(optimal.config["strategy"] == "optimal");
}

TEST_CASE("fig2 default grid covers six alphabets at 101 overlaps") {
    RunConfig config;
    config.command = "fig2";
    const EmitResult result = run_command(config);
    CHECK(result.table.rows.size() == 6 * 101);
    CHECK(result.config["n"].size() == 6);
    CHECK(result.config["lambda_grid"].size() == 101);
}

TEST_CASE("fig3 rows carry the family information and its ratio") {
    RunConfig config;
    config.command = "fig3";
    config.ns = {3};
    config.lambda_grid = {0.9};
    config.t_grid = {0.0, 1.0};
    const EmitResult result = run_command(config);

    REQUIRE(result.table.columns ==
            std::vector<std::string>{"n", "lambda", "T", "information", "ratio"});
    REQUIRE(result.rows.size() == 2);
    const double base = srm_information(make_pyramid(3, 0.9));
    CHECK(double(result.rows[0]["information"]) == Approx(base).margin(1e-14));
    CHECK(double(result.rows[0]["ratio"]) == Approx(1.0).margin(1e-12));
    CHECK(double(result.rows[1]["information"]) == Approx(0.1).margin(1e-12));
    CHECK(double(result.rows[1]["ratio"]) == Approx(0.1 / base).margin(1e-12));
}

TEST_CASE("fig4 reports the optimum, the square-root value, and asymptotes") {
    RunConfig config;
    config.command = "fig4";
    config.ns = {2, 3};
    config.lambda_grid = {0.5, 0.9};
    const EmitResult result = run_command(config);

    REQUIRE(result.table.columns ==
            std::vector<std::string>{"n", "lambda", "i_srm", "i_max", "ratio"});
    REQUIRE(result.rows.size() == 4);
    for (const auto& row : result.rows) {
        CHECK(double(row["ratio"]) >= 1.0 - 1e-12);
        CHECK(double(row["i_max"]) >= double(row["i_srm"]) - 1e-12);
    }
    // No asymptote exists for a two-letter alphabet, so only n = 3 reports one.
    REQUIRE(result.summary["asymptotes"].size() == 1);
    CHECK(result.summary["asymptotes"][0]["n"] == 3);
    CHECK(double(result.summary["asymptotes"][0]["ratio_limit"]) ==
          Approx(asymptotic_ratio(3)).margin(1e-14));
}

TEST_CASE("table1 percent columns agree with the raw fractions they round") {
    RunConfig config;
    config.command = "table1";
    config.ns = {2, 3, 10};
    const EmitResult result = run_command(config);

    REQUIRE(result.rows.size() == 3);
    for (const auto& row : result.rows) {
        const double critical = row["critical_d"];
        const double srm_star = row["srm_threshold"];
        const double opt_star = row["optimal_threshold"];
        CHECK(std::abs(std::stod(std::string(row["critical_pct"])) - 100.0 * critical) <=
              0.05 + 1e-12);
        CHECK(std::abs(std::stod(std::string(row["srm_threshold_pct"])) -
                       100.0 * srm_star) <= 0.00005 + 1e-12);
        CHECK(std::abs(std::stod(std::string(row["optimal_threshold_pct"])) -
                       100.0 * opt_star) <= 0.00005 + 1e-12);
    }
    // Two letters admit no family improvement, so the strategies coincide.
    CHECK(result.rows[0]["srm_threshold_pct"] == result.rows[0]["optimal_threshold_pct"]);
    CHECK(result.rows[0]["critical_pct"] == "0.0");
}

TEST_CASE("table1 matches the recorded threshold percentages end to end") {
    const auto records = parse_golden_directory(PYRINFO_GOLDEN_DIR);
    RunConfig config;
    config.command = "table1";
    config.ns = {2, 3, 4, 5, 10, 30, 50, 100};
    const EmitResult result = run_command(config);

    int compared = 0;
    for (const auto& record : records) {
        if (record.get("scenario") != "threshold-percent") continue;
        const int n = record.get_int("n");
        const Strategy strategy = record.get("strategy") == "srm" ? Strategy::srm
                                                                  : Strategy::optimal;
        for (const auto& row : result.rows) {
            if (int(row["n"]) != n) continue;
            const char* column = strategy == Strategy::srm ? "srm_threshold_pct"
                                                           : "optimal_threshold_pct";
            const double emitted = std::stod(std::string(row[column]));
            CHECK(std::abs(emitted - record.get_double("percent")) <=
                  record.get_double_or("tol", 0.005));
            ++compared;
        }
    }
    CHECK(compared == 16);
}

TEST_CASE("threshold report mode emits one row per alphabet") {
    RunConfig config;
    config.command = "threshold";
    config.ns = {2, 5};
    config.strategy = Strategy::optimal;
    const EmitResult result = run_command(config);

    REQUIRE(result.table.columns ==
            std::vector<std::string>{"n", "strategy", "d_star", "info_at_threshold",
                                     "critical_d"});
    REQUIRE(result.rows.size() == 2);
    CHECK(result.config["mode"] == "report");
    for (const auto& row : result.rows) {
        CHECK(row["strategy"] == "optimal");
        const int n = row["n"];
        const double d_star = row["d_star"];
        CHECK(d_star > 0.0);
        CHECK(d_star < double(n - 1) / n);
        CHECK(double(row["critical_d"]) == Approx(critical_disturbance(n)).margin(1e-15));
    }
}

TEST_CASE("threshold scan mode omits rows outside an alphabet's range") {
    RunConfig config;
    config.command = "threshold";
    config.ns = {2, 10};
    config.d_grid = {0.2, 0.55, 0.95};
    const EmitResult result = run_command(config);

    // n = 2 admits only 0.2; n = 10 admits 0.2 and 0.55; 0.95 exceeds both.
    REQUIRE(result.rows.size() == 3);
    CHECK(result.config["mode"] == "scan");
    CHECK(result.rows[0]["n"] == 2);
    CHECK(result.rows[1]["n"] == 10);
    CHECK(result.rows[2]["n"] == 10);
    CHECK(double(result.rows[1]["i_ab"]) ==
          Approx(alice_bob_information(10, 0.2)).margin(1e-14));
    CHECK(double(result.rows[1]["i_ae"]) ==
          Approx(eve_information(10, 0.2, Strategy::srm)).margin(1e-14));
}

TEST_CASE("optimize emits verification rows and refuses csv") {
    RunConfig config;
    config.command = "optimize";
    config.format = "csv";
    CHECK_THROWS_AS(run_command(config), std::invalid_argument);

    config.format = "json";
    config.ns = {2};
    config.lambda_grid = {0.5};
    config.restarts = 2;
    config.seed = 7;
    const EmitResult result = run_command(config);

    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0]["n"] == 2);
    CHECK(result.rows[0]["converged"] == true);
    CHECK(double(result.rows[0]["deficit"]) <= 1e-6);
    CHECK(double(result.summary["worst_excess"]) <= 1e-9);
    CHECK(result.verified);
    CHECK(result.config["seed"] == 7);
    CHECK(result.config["restarts"] == 2);
}

TEST_CASE("optimize output is deterministic for a fixed seed") {
    RunConfig config;
    config.command = "optimize";
    config.format = "json";
    config.ns = {2};
    config.lambda_grid = {0.3};
    config.restarts = 2;
    const std::string first = render(config, run_command(config));
    const std::string second = render(config, run_command(config));
    CHECK(first == second);
}

TEST_CASE("render wraps rows in a versioned document") {
    RunConfig config;
    config.command = "fig2";
    config.ns = {2};
    config.lambda_grid = {0.0, 1.0};
    config.format = "json";
    const EmitResult result = run_command(config);
    const Json doc = Json::parse(render(config, result));

    CHECK(doc["version"] == version);
    CHECK(doc["command"] == "fig2");
    CHECK(doc["config"]["n"] == Json::array({2}));
    CHECK(doc["rows"].size() == 2);
    CHECK_FALSE(doc.contains("summary"));

    config.format = "csv";
    const std::string csv = render(config, result);
    CHECK(csv.substr(0, csv.find('\n')) == "n,lambda,information");
    CHECK(csv.back() == '\n');
}

TEST_CASE("unknown commands are rejected") {
    RunConfig config;
    config.command = "fig9";
    CHECK_THROWS_AS(run_command(config), std::invalid_argument);
}
