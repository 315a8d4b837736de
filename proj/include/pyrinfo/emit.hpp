#pragma once
// Command layer: resolves grids, runs the library, and renders tables as
// CSV (12 significant digits) or JSON (full-precision numbers plus a config
// echo and the library version). Percentages are fixed-decimal with
// half-even rounding.

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pyrinfo/information.hpp"
#include "pyrinfo/optimizer.hpp"
#include "pyrinfo/pyramid.hpp"
#include "pyrinfo/thresholds.hpp"
#include "pyrinfo/version.hpp"

namespace pyrinfo {

using Json = nlohmann::ordered_json;

inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Fixed-decimal percentage of a fraction, rounded half to even.
inline std::string format_percent(double fraction, int decimals) {
    if (decimals < 0 || decimals > 9)
        throw std::invalid_argument("format_percent: need 0 <= decimals <= 9");
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i) scale *= 10.0;
    const auto scaled = (long long)(std::nearbyint(fraction * 100.0 * scale));
    if (decimals == 0) return std::to_string(scaled);
    const long long denom = (long long)(scale);
    std::string frac = std::to_string(std::llabs(scaled) % denom);
    frac.insert(frac.begin(), std::size_t(decimals) - frac.size(), '0');
    const std::string sign = scaled < 0 ? "-" : "";
    return sign + std::to_string(std::llabs(scaled) / denom) + "." + frac;
}

inline std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace: need at least one point");
    if (count == 1) return {lo};
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    out.back() = hi;
    return out;
}

namespace detail {

inline double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": not a number: '" + text + "'");
    }
    if (used != text.size())
        throw std::invalid_argument(std::string(what) + ": not a number: '" + text + "'");
    return value;
}

}  // namespace detail

// Grid syntax: either "min:max:steps" (inclusive, evenly spaced) or a
// comma-separated list of values.
inline std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("parse_grid: empty grid");
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t pos; (pos = spec.find(':', start)) != std::string::npos;
             start = pos + 1)
            parts.push_back(spec.substr(start, pos - start));
        parts.push_back(spec.substr(start));
        if (parts.size() != 3)
            throw std::invalid_argument("parse_grid: expected min:max:steps, got '" + spec +
                                        "'");
        const double lo = detail::parse_number(parts[0], "parse_grid");
        const double hi = detail::parse_number(parts[1], "parse_grid");
        const double steps_raw = detail::parse_number(parts[2], "parse_grid");
        const int steps = int(steps_raw);
        if (double(steps) != steps_raw || steps < 1)
            throw std::invalid_argument("parse_grid: steps must be a positive integer");
        if (hi < lo) throw std::invalid_argument("parse_grid: max below min");
        if (steps == 1 && hi != lo)
            throw std::invalid_argument("parse_grid: a single step needs min == max");
        return linspace(lo, hi, steps);
    }
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t pos = std::min(spec.find(',', start), spec.size());
        const std::string token = spec.substr(start, pos - start);
        if (token.empty()) throw std::invalid_argument("parse_grid: empty value in list");
        values.push_back(detail::parse_number(token, "parse_grid"));
        start = pos + 1;
    }
    return values;
}

inline const char* strategy_name(Strategy s) {
    return s == Strategy::srm ? "srm" : "optimal";
}

inline Strategy parse_strategy_name(const std::string& name) {
    if (name == "srm") return Strategy::srm;
    if (name == "optimal") return Strategy::optimal;
    throw std::invalid_argument("unknown strategy '" + name + "' (srm or optimal)");
}

struct RunConfig {
    std::string command;
    std::vector<int> ns;               // empty = command default
    std::vector<double> lambda_grid;   // empty = command default
    std::vector<double> d_grid;        // empty = command default / report mode
    std::vector<double> t_grid;        // empty = command default
    Strategy strategy = Strategy::srm;
    std::uint64_t seed = 42;
    int restarts = 16;
    double tol = 1e-10;
    std::string format = "csv";
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

struct EmitResult {
    Table table;
    Json rows = Json::array();
    Json config = Json::object();
    Json summary;         // null unless the command aggregates something
    bool verified = true; // false when a built-in cross-check failed
};

namespace detail {

inline Json grid_json(const std::vector<double>& grid) {
    Json out = Json::array();
    for (double v : grid) out.push_back(v);
    return out;
}

inline Json ns_json(const std::vector<int>& ns) {
    Json out = Json::array();
    for (int n : ns) out.push_back(n);
    return out;
}

}  // namespace detail

// Information of the chosen strategy against the overlap, one curve per
// alphabet size.
inline EmitResult emit_fig2(const RunConfig& config) {
    EmitResult result;
    const std::vector<int> ns =
        config.ns.empty() ? std::vector<int>{2, 3, 5, 10, 20, 100} : config.ns;
    const std::vector<double> lambdas =
        config.lambda_grid.empty() ? linspace(0.0, 1.0, 101) : config.lambda_grid;
    result.table.columns = {"n", "lambda", "information"};
    for (int n : ns) {
        for (double lambda : lambdas) {
            const auto p = make_pyramid(n, lambda);
            const double info = config.strategy == Strategy::srm ? srm_information(p)
                                                                 : optimum(p).i_max;
            result.table.rows.push_back(
                {std::to_string(n), fmt12(lambda), fmt12(info)});
            result.rows.push_back({{"n", n}, {"lambda", lambda}, {"information", info}});
        }
    }
    result.config = {{"n", detail::ns_json(ns)},
                     {"strategy", strategy_name(config.strategy)},
                     {"lambda_grid", detail::grid_json(lambdas)}};
    return result;
}

// Family information against the rescaled parameter, one curve per overlap,
// with the ratio to the square-root value alongside.
inline EmitResult emit_fig3(const RunConfig& config) {
    EmitResult result;
    const std::vector<int> ns = config.ns.empty() ? std::vector<int>{10} : config.ns;
    const std::vector<double> lambdas =
        config.lambda_grid.empty()
            ? std::vector<double>{0.3, 0.4, 0.5, 0.6, 0.7, 0.77276, 0.8, 0.9}
            : config.lambda_grid;
    const std::vector<double> ts =
        config.t_grid.empty() ? linspace(0.0, 1.0, 101) : config.t_grid;
    result.table.columns = {"n", "lambda", "T", "information", "ratio"};
    for (int n : ns) {
        for (double lambda : lambdas) {
            const auto p = make_pyramid(n, lambda);
            const double base = srm_information(p);
            for (double T : ts) {
                const double info = family_information(p, T);
                const double ratio = base > 0.0 ? info / base : 1.0;
                result.table.rows.push_back({std::to_string(n), fmt12(lambda), fmt12(T),
                                             fmt12(info), fmt12(ratio)});
                result.rows.push_back({{"n", n},
                                       {"lambda", lambda},
                                       {"T", T},
                                       {"information", info},
                                       {"ratio", ratio}});
            }
        }
    }
    result.config = {{"n", detail::ns_json(ns)},
                     {"lambda_grid", detail::grid_json(lambdas)},
                     {"t_grid", detail::grid_json(ts)}};
    return result;
}

// Ratio of the family optimum to the square-root value against the overlap,
// with the large-overlap asymptote per alphabet in the summary.
inline EmitResult emit_fig4(const RunConfig& config) {
    EmitResult result;
    const std::vector<int> ns =
        config.ns.empty() ? std::vector<int>{3, 5, 10, 20, 100} : config.ns;
    const std::vector<double> lambdas =
        config.lambda_grid.empty() ? linspace(0.0, 0.99, 100) : config.lambda_grid;
    result.table.columns = {"n", "lambda", "i_srm", "i_max", "ratio"};
    Json asymptotes = Json::array();
    for (int n : ns) {
        for (double lambda : lambdas) {
            const auto opt = optimum(make_pyramid(n, lambda));
            const double ratio = opt.i_srm > 0.0 ? opt.i_max / opt.i_srm : 1.0;
            result.table.rows.push_back({std::to_string(n), fmt12(lambda),
                                         fmt12(opt.i_srm), fmt12(opt.i_max), fmt12(ratio)});
            result.rows.push_back({{"n", n},
                                   {"lambda", lambda},
                                   {"i_srm", opt.i_srm},
                                   {"i_max", opt.i_max},
                                   {"ratio", ratio}});
        }
        if (n >= 3) asymptotes.push_back({{"n", n}, {"ratio_limit", asymptotic_ratio(n)}});
    }
    result.summary = {{"asymptotes", asymptotes}};
    result.config = {{"n", detail::ns_json(ns)},
                     {"lambda_grid", detail::grid_json(lambdas)}};
    return result;
}

// Threshold table: critical disturbance and both strategy thresholds as
// percentages; JSON rows also carry the raw fractions.
inline EmitResult emit_table1(const RunConfig& config) {
    EmitResult result;
    const std::vector<int> ns =
        config.ns.empty() ? std::vector<int>{2, 3, 4, 5, 10, 30, 50, 100} : config.ns;
    result.table.columns = {"n", "critical_pct", "srm_threshold_pct",
                            "optimal_threshold_pct"};
    for (int n : ns) {
        const double critical = critical_disturbance(n);
        const double srm_star = ck_threshold(n, Strategy::srm).d_star;
        const double opt_star = ck_threshold(n, Strategy::optimal).d_star;
        const std::string critical_pct = format_percent(critical, 1);
        const std::string srm_pct = format_percent(srm_star, 4);
        const std::string opt_pct = format_percent(opt_star, 4);
        result.table.rows.push_back({std::to_string(n), critical_pct, srm_pct, opt_pct});
        result.rows.push_back({{"n", n},
                               {"critical_pct", critical_pct},
                               {"srm_threshold_pct", srm_pct},
                               {"optimal_threshold_pct", opt_pct},
                               {"critical_d", critical},
                               {"srm_threshold", srm_star},
                               {"optimal_threshold", opt_star}});
    }
    result.config = {{"n", detail::ns_json(ns)}};
    return result;
}

// Threshold reports per alphabet, or an information scan over a
// disturbance grid when one is supplied. Scan rows outside an alphabet's
// admissible disturbance range are omitted.
inline EmitResult emit_threshold(const RunConfig& config) {
    EmitResult result;
    const std::vector<int> ns =
        config.ns.empty() ? std::vector<int>{2, 3, 4, 5, 10, 30, 50, 100} : config.ns;
    if (config.d_grid.empty()) {
        result.table.columns = {"n", "strategy", "d_star", "info_at_threshold",
                                "critical_d"};
        for (int n : ns) {
            const auto r = ck_threshold(n, config.strategy);
            result.table.rows.push_back({std::to_string(n), strategy_name(config.strategy),
                                         fmt12(r.d_star), fmt12(r.info_at_threshold),
                                         fmt12(r.critical_d)});
            result.rows.push_back({{"n", n},
                                   {"strategy", strategy_name(config.strategy)},
                                   {"d_star", r.d_star},
                                   {"info_at_threshold", r.info_at_threshold},
                                   {"critical_d", r.critical_d}});
        }
        result.config = {{"n", detail::ns_json(ns)},
                         {"strategy", strategy_name(config.strategy)},
                         {"mode", "report"}};
        return result;
    }
    result.table.columns = {"n", "strategy", "disturbance", "i_ab", "i_ae"};
    for (int n : ns) {
        const double hi = double(n - 1) / n;
        for (double d : config.d_grid) {
            if (d < 0.0 || d > hi) continue;
            const double ab = alice_bob_information(n, d);
            const double ae = eve_information(n, d, config.strategy);
            result.table.rows.push_back({std::to_string(n), strategy_name(config.strategy),
                                         fmt12(d), fmt12(ab), fmt12(ae)});
            result.rows.push_back({{"n", n},
                                   {"strategy", strategy_name(config.strategy)},
                                   {"disturbance", d},
                                   {"i_ab", ab},
                                   {"i_ae", ae}});
        }
    }
    result.config = {{"n", detail::ns_json(ns)},
                     {"strategy", strategy_name(config.strategy)},
                     {"mode", "scan"},
                     {"d_grid", detail::grid_json(config.d_grid)}};
    return result;
}

// Numerical optimizer against the closed form over an (n, lambda) grid,
// with two extra outcomes beyond the alphabet size. JSON only. The result
// is flagged unverified if the optimizer ever beats the closed form beyond
// tolerance, which would falsify one of the two routes.
inline EmitResult emit_optimize(const RunConfig& config) {
    if (config.format == "csv")
        throw std::invalid_argument("optimize emits JSON only; pass --format json");
    EmitResult result;
    const std::vector<int> ns = config.ns.empty() ? std::vector<int>{3} : config.ns;
    const std::vector<double> lambdas =
        config.lambda_grid.empty() ? linspace(0.1, 0.9, 9) : config.lambda_grid;
    constexpr int extra_outcomes = 2;
    constexpr double excess_bound = 1e-9;
    OptimizeOptions opts;
    opts.seed = config.seed;
    opts.restarts = config.restarts;
    opts.tol = config.tol;
    const VerifyReport report =
        verify_against_closed_form(ns, lambdas, extra_outcomes, opts);
    for (const auto& row : report.rows) {
        result.rows.push_back({{"n", row.n},
                               {"lambda", row.lambda},
                               {"closed_form", row.closed_form},
                               {"numerical", row.numerical},
                               {"deficit", row.deficit},
                               {"excess", row.excess},
                               {"iterations", row.iterations},
                               {"converged", row.converged}});
    }
    result.summary = {{"worst_deficit", report.worst_deficit},
                      {"worst_excess", report.worst_excess},
                      {"excess_bound", excess_bound}};
    result.verified = report.worst_excess <= excess_bound;
    result.config = {{"n", detail::ns_json(ns)},
                     {"lambda_grid", detail::grid_json(lambdas)},
                     {"extra_outcomes", extra_outcomes},
                     {"seed", config.seed},
                     {"restarts", config.restarts},
                     {"tol", config.tol}};
    return result;
}

inline EmitResult run_command(const RunConfig& config) {
    if (config.command == "fig2") return emit_fig2(config);
    if (config.command == "fig3") return emit_fig3(config);
    if (config.command == "fig4") return emit_fig4(config);
    if (config.command == "table1") return emit_table1(config);
    if (config.command == "threshold") return emit_threshold(config);
    if (config.command == "optimize") return emit_optimize(config);
    throw std::invalid_argument("unknown command '" + config.command + "'");
}

inline std::string render(const RunConfig& config, const EmitResult& result) {
    if (config.format == "csv") return to_csv(result.table);
    Json doc = {{"version", version},
                {"command", config.command},
                {"config", result.config},
                {"rows", result.rows}};
    if (!result.summary.is_null()) doc["summary"] = result.summary;
    return doc.dump(2) + "\n";
}

}  // namespace pyrinfo
