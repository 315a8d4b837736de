#pragma once
// Golden-record corpus: plain-text blocks of "key: value" lines, separated
// by blank lines, with '#' comment lines. Each block names a scenario and
// carries the inputs and the expected value; this header parses the corpus
// and replays every record against the library. All expected numbers live
// in the corpus files, nowhere else.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrinfo/information.hpp"
#include "pyrinfo/measurements.hpp"
#include "pyrinfo/optimizer.hpp"
#include "pyrinfo/pyramid.hpp"
#include "pyrinfo/thresholds.hpp"

namespace pyrinfo {

struct GoldenRecord {
    std::map<std::string, std::string> fields;
    std::string file;
    int first_line = 0;

    std::string where() const { return file + ":" + std::to_string(first_line); }

    bool has(const std::string& key) const { return fields.count(key) > 0; }

    const std::string& get(const std::string& key) const {
        const auto it = fields.find(key);
        if (it == fields.end())
            throw std::runtime_error(where() + ": missing field '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key) const {
        const std::string& raw = get(key);
        std::size_t used = 0;
        const double value = std::stod(raw, &used);
        if (used != raw.size())
            throw std::runtime_error(where() + ": field '" + key +
                                     "' is not a number: " + raw);
        return value;
    }

    double get_double_or(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    int get_int(const std::string& key) const {
        const double value = get_double(key);
        const int rounded = int(std::lround(value));
        if (double(rounded) != value)
            throw std::runtime_error(where() + ": field '" + key +
                                     "' is not an integer: " + get(key));
        return rounded;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace detail

inline std::vector<GoldenRecord> parse_golden_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_golden_file: cannot open " + path);
    std::vector<GoldenRecord> records;
    GoldenRecord current;
    current.file = path;
    int line_number = 0;
    std::string line;
    const auto flush = [&]() {
        if (!current.fields.empty()) {
            if (!current.has("scenario"))
                throw std::runtime_error(current.where() + ": block without a scenario");
            records.push_back(current);
        }
        current.fields.clear();
        current.first_line = 0;
    };
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = detail::trim(line);
        if (text.empty()) {
            flush();
            continue;
        }
        if (text.front() == '#') continue;
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": expected 'key: value', got: " + text);
        const std::string key = detail::trim(text.substr(0, colon));
        const std::string value = detail::trim(text.substr(colon + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": empty key or value");
        if (current.fields.empty()) current.first_line = line_number;
        if (!current.fields.emplace(key, value).second)
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": duplicate field '" + key + "'");
    }
    flush();
    return records;
}

inline std::vector<GoldenRecord> parse_golden_directory(const std::string& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory))
        throw std::runtime_error("golden corpus directory not found: " + directory);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::runtime_error("golden corpus directory has no .txt files: " + directory);
    std::vector<GoldenRecord> records;
    for (const std::string& file : files) {
        auto parsed = parse_golden_file(file);
        records.insert(records.end(), parsed.begin(), parsed.end());
    }
    return records;
}

struct GoldenCheck {
    std::string description;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct GoldenReport {
    std::vector<GoldenCheck> checks;
    int passed = 0;
    int failed = 0;
};

namespace detail {

inline Strategy parse_strategy(const GoldenRecord& r) {
    const std::string& name = r.get("strategy");
    if (name == "srm") return Strategy::srm;
    if (name == "optimal") return Strategy::optimal;
    throw std::runtime_error(r.where() + ": unknown strategy '" + name + "'");
}

inline void add_check(GoldenReport& report, std::string description, double expected,
                      double actual, double tolerance) {
    GoldenCheck check;
    check.description = std::move(description);
    check.expected = expected;
    check.actual = actual;
    check.tolerance = tolerance;
    check.passed = std::abs(actual - expected) <= tolerance;
    report.failed += check.passed ? 0 : 1;
    report.passed += check.passed ? 1 : 0;
    report.checks.push_back(std::move(check));
}

inline void run_golden_record(const GoldenRecord& r, GoldenReport& report) {
    const std::string scenario = r.get("scenario");
    if (scenario == "srm-information") {
        const int n = r.get_int("n");
        const double lambda = r.get_double("lambda");
        add_check(report,
                  "srm-information n=" + std::to_string(n) + " lambda=" + r.get("lambda"),
                  r.get_double("expected"), srm_information(make_pyramid(n, lambda)),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "family-information") {
        const int n = r.get_int("n");
        const auto p = make_pyramid(n, r.get_double("lambda"));
        add_check(report,
                  "family-information n=" + std::to_string(n) + " lambda=" +
                      r.get("lambda") + " T=" + r.get("T"),
                  r.get_double("expected"), family_information(p, r.get_double("T")),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "optimum-information") {
        const int n = r.get_int("n");
        const auto opt = optimum(make_pyramid(n, r.get_double("lambda")));
        add_check(report,
                  "optimum-information n=" + std::to_string(n) + " lambda=" + r.get("lambda"),
                  r.get_double("expected"), opt.i_max, r.get_double_or("tol", 1e-12));
    } else if (scenario == "optimum-tstar") {
        const int n = r.get_int("n");
        const auto opt = optimum(make_pyramid(n, r.get_double("lambda")));
        add_check(report,
                  "optimum-tstar n=" + std::to_string(n) + " lambda=" + r.get("lambda"),
                  r.get_double("expected"), opt.t_star, r.get_double_or("tol", 1e-12));
    } else if (scenario == "information-ratio") {
        const int n = r.get_int("n");
        const auto p = make_pyramid(n, r.get_double("lambda"));
        const std::string numerator = r.get("numerator");
        double value = 0.0;
        if (numerator == "optimum")
            value = optimum(p).i_max / srm_information(p);
        else if (numerator == "unambiguous")
            value = family_information(p, 1.0) / srm_information(p);
        else
            throw std::runtime_error(r.where() + ": unknown numerator '" + numerator + "'");
        add_check(report,
                  "information-ratio(" + numerator + ") n=" + std::to_string(n) +
                      " lambda=" + r.get("lambda"),
                  r.get_double("expected"), value, r.get_double_or("tol", 1e-12));
    } else if (scenario == "srm-mud-crossing") {
        const int n = r.get_int("n");
        const double star = srm_mud_crossing(n);
        add_check(report, "srm-mud-crossing n=" + std::to_string(n),
                  r.get_double("expected"), star, r.get_double_or("tol", 1e-10));
        if (r.has("info"))
            add_check(report, "srm-mud-crossing info n=" + std::to_string(n),
                      r.get_double("info"),
                      srm_information(make_pyramid(n, star)), 1e-9);
        if (r.has("anchor"))
            add_check(report, "srm-mud-crossing anchor n=" + std::to_string(n),
                      r.get_double("anchor"), star, r.get_double("anchor_tol"));
    } else if (scenario == "inconclusive-probability") {
        const int n = r.get_int("n");
        const auto p = make_pyramid(n, r.get_double("lambda"));
        const double t = family_t(p, r.get_double("T"));
        add_check(report,
                  "inconclusive-probability n=" + std::to_string(n) + " lambda=" +
                      r.get("lambda") + " T=" + r.get("T"),
                  r.get_double("expected"), inconclusive_probability(p, t),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "threshold") {
        const int n = r.get_int("n");
        const Strategy strategy = parse_strategy(r);
        const auto result = ck_threshold(n, strategy);
        add_check(report,
                  "threshold n=" + std::to_string(n) + " strategy=" + r.get("strategy"),
                  r.get_double("expected"), result.d_star, r.get_double_or("tol", 1e-10));
        if (r.has("info"))
            add_check(report,
                      "threshold info n=" + std::to_string(n) + " strategy=" +
                          r.get("strategy"),
                      r.get_double("info"), result.info_at_threshold, 1e-9);
    } else if (scenario == "threshold-percent") {
        const int n = r.get_int("n");
        const Strategy strategy = parse_strategy(r);
        const auto result = ck_threshold(n, strategy);
        add_check(report,
                  "threshold-percent n=" + std::to_string(n) + " strategy=" +
                      r.get("strategy"),
                  r.get_double("percent"), 100.0 * result.d_star,
                  r.get_double_or("tol", 0.005));
    } else if (scenario == "critical-disturbance") {
        const int n = r.get_int("n");
        const double value = critical_disturbance(n);
        add_check(report, "critical-disturbance n=" + std::to_string(n),
                  r.get_double("expected"), value, r.get_double_or("tol", 1e-12));
        if (r.has("percent"))
            add_check(report, "critical-disturbance percent n=" + std::to_string(n),
                      r.get_double("percent"), 100.0 * value, 0.05);
    } else if (scenario == "lambda-of-disturbance") {
        const int n = r.get_int("n");
        add_check(report,
                  "lambda-of-disturbance n=" + std::to_string(n) + " d=" +
                      r.get("disturbance"),
                  r.get_double("expected"),
                  disturbance_to_lambda(n, r.get_double("disturbance")),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "alice-bob-information") {
        const int n = r.get_int("n");
        add_check(report,
                  "alice-bob-information n=" + std::to_string(n) + " d=" +
                      r.get("disturbance"),
                  r.get_double("expected"),
                  alice_bob_information(n, r.get_double("disturbance")),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "eve-information") {
        const int n = r.get_int("n");
        add_check(report,
                  "eve-information n=" + std::to_string(n) + " d=" + r.get("disturbance") +
                      " strategy=" + r.get("strategy"),
                  r.get_double("expected"),
                  eve_information(n, r.get_double("disturbance"), parse_strategy(r)),
                  r.get_double_or("tol", 1e-12));
    } else if (scenario == "optimizer-information") {
        const int n = r.get_int("n");
        const auto p = make_pyramid(n, r.get_double("lambda"));
        OptimizeOptions opts;
        opts.seed = std::uint64_t(r.get_int("seed"));
        opts.restarts = r.get_int("restarts");
        const auto result = optimize(general_ensemble(p), r.get_int("outcomes"), opts);
        const double expected = r.get_double("expected");
        add_check(report,
                  "optimizer-information n=" + std::to_string(n) + " lambda=" +
                      r.get("lambda"),
                  expected, result.info, r.get_double_or("tol", 1e-6));
        // one-sided: the numerical search must never beat the closed form
        GoldenCheck excess;
        excess.description = "optimizer-information excess n=" + std::to_string(n) +
                             " lambda=" + r.get("lambda");
        excess.expected = expected;
        excess.actual = result.info;
        excess.tolerance = r.get_double_or("excess_tol", 1e-9);
        excess.passed = result.info - expected <= excess.tolerance;
        report.failed += excess.passed ? 0 : 1;
        report.passed += excess.passed ? 1 : 0;
        report.checks.push_back(std::move(excess));
    } else {
        throw std::runtime_error(r.where() + ": unknown scenario '" + scenario + "'");
    }
}

}  // namespace detail

inline GoldenReport run_golden_suite(const std::string& directory) {
    const auto records = parse_golden_directory(directory);
    GoldenReport report;
    for (const auto& record : records) detail::run_golden_record(record, report);
    return report;
}

}  // namespace pyrinfo
