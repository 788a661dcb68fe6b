// fibbench — compute Fibonacci numbers twelve ways, benchmark the
// algorithms, scan their floating-point exactness limits, and render
// benchmark CSVs as SVG charts.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibbench/algorithms.hpp"
#include "fibbench/bench.hpp"
#include "fibbench/csv.hpp"
#include "fibbench/oracle.hpp"
#include "fibbench/registry.hpp"
#include "fibbench/svg.hpp"

namespace {

using namespace fibbench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAlgorithmFailure = 3;
constexpr int kExitMismatch = 4;

constexpr std::uint64_t kFib1WarnCeiling = 30;

int default_depth_limit() {
    if (const char* env = std::getenv("FIBBENCH_DEPTH_LIMIT")) {
        try {
            const int parsed = std::stoi(env);
            if (parsed > 0) {
                return parsed;
            }
        } catch (const std::exception&) {
            // fall through to the default
        }
        std::cerr << "warning: ignoring invalid FIBBENCH_DEPTH_LIMIT='" << env
                  << "'\n";
    }
    return kDefaultDepthLimit;
}

std::vector<AlgoId> all_ids() {
    std::vector<AlgoId> ids;
    for (const auto& d : Registry::instance().descriptors()) {
        ids.push_back(d.id);
    }
    return ids;
}

// Selector grammar: an id ("fib3"), a comma list ("fib3,fib7"), or "all".
std::optional<std::vector<AlgoId>> parse_selector(const std::string& selector) {
    if (selector == "all") {
        return all_ids();
    }
    std::vector<AlgoId> ids;
    std::size_t start = 0;
    while (start <= selector.size()) {
        const std::size_t comma = selector.find(',', start);
        const std::string name =
            selector.substr(start, comma == std::string::npos
                                       ? std::string::npos
                                       : comma - start);
        const auto id = parse_algo_id(name);
        if (!id.has_value()) {
            std::cerr << "error: unknown algorithm '" << name
                      << "' (expected fib1..fib12 or 'all')\n";
            return std::nullopt;
        }
        ids.push_back(*id);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return ids;
}

std::uint64_t magnitude_of(std::int64_t n) {
    return n >= 0 ? static_cast<std::uint64_t>(n)
                  : static_cast<std::uint64_t>(-(n + 1)) + 1u;
}

// fib1 is the one algorithm where just invoking it is hazardous; everything
// else fails fast with an honest outcome.
bool fib1_gate(std::uint64_t magnitude, bool force, std::string* refusal) {
    const auto ceiling = Registry::instance().descriptor(AlgoId::Fib1).max_safe_n;
    if (ceiling.has_value() && magnitude > *ceiling && !force) {
        *refusal = "fib1 at n=" + std::to_string(magnitude) +
                   " needs ~phi^n time (exponential); pass --force to run it anyway";
        return false;
    }
    if (magnitude > kFib1WarnCeiling) {
        std::cerr << "warning: fib1 beyond n=" << kFib1WarnCeiling
                  << " is exponentially slow; this may take a while\n";
    }
    return true;
}

// ---------------------------------------------------------------- compute

int cmd_compute(const std::string& selector, bool all_flag, std::int64_t n,
                bool force, int depth_limit) {
    const auto ids = all_flag ? std::optional(all_ids()) : parse_selector(selector);
    if (!ids.has_value()) {
        return kExitUsage;
    }
    RunOptions options;
    options.depth_limit = depth_limit;
    const std::uint64_t magnitude = magnitude_of(n);

    if (ids->size() == 1) {
        const AlgoId id = ids->front();
        if (id == AlgoId::Fib1) {
            std::string refusal;
            if (!fib1_gate(magnitude, force, &refusal)) {
                std::cerr << "error: " << refusal << '\n';
                return kExitUsage;
            }
        }
        const FibOutcome outcome = fib_signed(id, n, options);
        if (!outcome.ok()) {
            std::cout << "Failed (" << to_string(*outcome.failure) << ")\n";
            return kExitAlgorithmFailure;
        }
        std::cout << outcome.value->str() << " (" << to_string(outcome.status)
                  << ")\n";
        return kExitOk;
    }

    bool any_failure = false;
    bool any_mismatch = false;
    std::optional<BigInt> reference;
    std::cout << std::left << std::setw(7) << "algo" << std::setw(14)
              << "status" << "value\n";
    for (AlgoId id : *ids) {
        if (id == AlgoId::Fib1) {
            std::string refusal;
            if (!fib1_gate(magnitude, force, &refusal)) {
                std::cout << std::left << std::setw(7) << to_string(id)
                          << std::setw(14) << "Skipped"
                          << "(" << refusal << ")\n";
                continue;
            }
        }
        const FibOutcome outcome = fib_signed(id, n, options);
        if (!outcome.ok()) {
            any_failure = true;
            std::cout << std::left << std::setw(7) << to_string(id)
                      << std::setw(14) << "Failed"
                      << "(" << to_string(*outcome.failure) << ")\n";
            continue;
        }
        if (!reference.has_value()) {
            reference = outcome.value;
        } else if (*reference != *outcome.value) {
            any_mismatch = true;
        }
        std::cout << std::left << std::setw(7) << to_string(id)
                  << std::setw(14) << to_string(outcome.status)
                  << outcome.value->str() << '\n';
    }
    if (any_mismatch) {
        std::cerr << "note: algorithms disagree at n=" << n
                  << " (expected only in the approximate range)\n";
    }
    if (any_failure) {
        return kExitAlgorithmFailure;
    }
    return any_mismatch ? kExitMismatch : kExitOk;
}

// ------------------------------------------------------------------ bench

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_n_range(
    const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        return std::nullopt;
    }
    try {
        const std::uint64_t lo = std::stoull(text.substr(0, colon));
        const std::uint64_t hi = std::stoull(text.substr(colon + 1));
        if (lo > hi) {
            return std::nullopt;
        }
        return std::make_pair(lo, hi);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void print_ranking(const RankingSummary& ranking) {
    std::cout << "ranking (fastest to slowest):";
    for (AlgoId id : ranking.fastest_to_slowest) {
        std::cout << ' ' << to_string(id);
    }
    std::cout << '\n'
              << "ratio_max_min: " << std::fixed << std::setprecision(3)
              << ranking.ratio_max_min << '\n';
}

nlohmann::json records_to_json(std::span<const BenchRecord> records) {
    nlohmann::json array = nlohmann::json::array();
    for (const BenchRecord& r : records) {
        array.push_back({
            {"algo", to_string(r.algo)},
            {"n", r.n},
            {"reps", r.reps},
            {"mean_ns", r.mean_ns},
            {"stddev_ns", r.stddev_ns},
            {"cv", r.cv},
        });
    }
    return array;
}

int cmd_bench(const std::string& group_name, const std::string& selector,
              std::int64_t n_flag, const std::string& n_range,
              std::uint64_t reps, std::uint64_t step, std::string out_path,
              const std::string& format, bool force, int depth_limit) {
    RunOptions options;
    options.depth_limit = depth_limit;

    std::vector<BenchRecord> records;
    RankingSummary ranking;
    try {
        if (!group_name.empty()) {
            const auto group_id = parse_group_id(group_name);
            if (!group_id.has_value()) {
                std::cerr << "error: unknown group '" << group_name
                          << "' (expected g1, g2, g3 or g4)\n";
                return kExitUsage;
            }
            const ExperimentGroup& group = experiment_group(*group_id);
            const std::uint64_t effective_step =
                step > 0 ? step : default_step(group);
            GroupRunResult result = run_group(group, reps, effective_step, options);
            records = std::move(result.records);
            ranking = std::move(result.ranking);
            if (out_path.empty()) {
                out_path = "fibbench_" + std::string(to_string(*group_id)) +
                           (format == "json" ? ".json" : ".csv");
            }
        } else {
            const auto ids = parse_selector(selector);
            if (!ids.has_value()) {
                return kExitUsage;
            }
            std::uint64_t lo = 0;
            std::uint64_t hi = 0;
            if (!n_range.empty()) {
                const auto range = parse_n_range(n_range);
                if (!range.has_value()) {
                    std::cerr << "error: --n-range expects 'LO:HI' with LO <= HI\n";
                    return kExitUsage;
                }
                lo = range->first;
                hi = range->second;
            } else {
                if (n_flag < 0) {
                    std::cerr << "error: bench expects a non-negative n\n";
                    return kExitUsage;
                }
                lo = hi = static_cast<std::uint64_t>(n_flag);
            }
            const std::uint64_t effective_step = step > 0 ? step : 1;
            for (AlgoId id : *ids) {
                for (std::uint64_t n = lo;; n += effective_step) {
                    if (id == AlgoId::Fib1) {
                        std::string refusal;
                        if (!fib1_gate(n, force, &refusal)) {
                            std::cerr << "error: " << refusal << '\n';
                            return kExitUsage;
                        }
                    }
                    records.push_back(bench(id, n, reps, options));
                    if (effective_step > hi - n) {
                        break;
                    }
                }
            }
            ranking = rank_records(records, std::nullopt);
            if (out_path.empty()) {
                out_path = format == "json" ? "fibbench_bench.json"
                                            : "fibbench_bench.csv";
            }
        }
    } catch (const InvalidSampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAlgorithmFailure;
    }

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
    }
    if (format == "json") {
        out << records_to_json(records).dump(2) << '\n';
    } else {
        write_bench_csv(out, records, &ranking);
    }
    out.close();

    std::cout << "wrote " << records.size() << " records to " << out_path << '\n';
    print_ranking(ranking);
    return kExitOk;
}

// ------------------------------------------------------------------- scan

void print_report_text(const ExactnessReport& report) {
    std::cout << "algo: " << to_string(report.algo) << '\n'
              << "scanned_max: " << report.scanned_max << '\n'
              << "first_inexact_n: ";
    if (report.first_inexact_n.has_value()) {
        std::cout << *report.first_inexact_n;
    } else {
        std::cout << "none";
    }
    std::cout << '\n' << "first_failed_n: ";
    if (report.first_failed_n.has_value()) {
        std::cout << *report.first_failed_n;
    } else {
        std::cout << "none";
    }
    std::cout << '\n';
}

int cmd_scan(const std::string& selector, std::uint64_t max_n,
             const std::string& format, bool update_registry, int depth_limit) {
    const auto ids = parse_selector(selector);
    if (!ids.has_value()) {
        return kExitUsage;
    }
    RunOptions options;
    options.depth_limit = depth_limit;

    nlohmann::json json_reports = nlohmann::json::array();
    bool first = true;
    for (AlgoId id : *ids) {
        std::uint64_t effective_max = max_n;
        if (id == AlgoId::Fib1 && effective_max > kFib1WarnCeiling) {
            effective_max = kFib1WarnCeiling;
            std::cerr << "note: clamping fib1 scan to n<=" << effective_max
                      << " (exponential runtime)\n";
        }
        const ExactnessReport report = scan_exactness(id, effective_max, options);
        if (update_registry && report.first_inexact_n.has_value()) {
            const std::uint64_t fi = *report.first_inexact_n;
            Registry::instance().set_exact_through(id, fi == 0 ? 0 : fi - 1);
        }
        if (format == "json") {
            json_reports.push_back(to_json(report));
        } else {
            if (!first) {
                std::cout << '\n';
            }
            print_report_text(report);
        }
        first = false;
    }
    if (format == "json") {
        std::cout << (json_reports.size() == 1 ? json_reports.front().dump(2)
                                               : json_reports.dump(2))
                  << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------------- report

int cmd_report(const std::string& input, std::string out_dir,
               std::string prefix) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "error: cannot read '" << input << "'\n";
        return kExitUsage;
    }
    std::vector<BenchRecord> records;
    try {
        records = read_bench_csv(in);
    } catch (const CsvError& e) {
        std::cerr << "error: malformed CSV: " << e.what() << '\n';
        return kExitUsage;
    }
    if (records.empty()) {
        std::cerr << "error: '" << input << "' contains no benchmark records\n";
        return kExitUsage;
    }

    if (prefix.empty()) {
        prefix = std::filesystem::path(input).stem().string();
    }
    if (out_dir.empty()) {
        out_dir = ".";
    }
    std::filesystem::create_directories(out_dir);

    std::map<AlgoId, ChartSeries> runtime_series;
    std::map<AlgoId, ChartSeries> cv_series;
    for (const BenchRecord& r : records) {
        auto& rt = runtime_series[r.algo];
        rt.label = to_string(r.algo);
        rt.points.emplace_back(static_cast<double>(r.n), r.mean_ns / 1e9);
        auto& cv = cv_series[r.algo];
        cv.label = to_string(r.algo);
        cv.points.emplace_back(static_cast<double>(r.n), r.cv);
    }
    const auto flatten = [](std::map<AlgoId, ChartSeries>& by_algo) {
        std::vector<ChartSeries> series;
        for (auto& [id, s] : by_algo) {
            std::sort(s.points.begin(), s.points.end());
            series.push_back(std::move(s));
        }
        return series;
    };

    const auto write_chart = [&](const std::string& suffix, const ChartSpec& spec,
                                 const std::vector<ChartSeries>& series) -> std::optional<std::string> {
        const auto path =
            (std::filesystem::path(out_dir) / (prefix + suffix)).string();
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot open '" << path << "' for writing\n";
            return std::nullopt;
        }
        write_line_chart(out, spec, series);
        return path;
    };

    ChartSpec runtime_spec;
    runtime_spec.title = prefix + ": mean runtime over " +
                         std::to_string(records.front().reps) + " repetitions";
    runtime_spec.x_label = "n";
    runtime_spec.y_label = "average runtime (s)";
    const auto runtime_path =
        write_chart("_runtime.svg", runtime_spec, flatten(runtime_series));
    if (!runtime_path.has_value()) {
        return kExitUsage;
    }

    ChartSpec cv_spec;
    cv_spec.title = prefix + ": coefficient of variation";
    cv_spec.x_label = "n";
    cv_spec.y_label = "coefficient of variation";
    const auto cv_path = write_chart("_cv.svg", cv_spec, flatten(cv_series));
    if (!cv_path.has_value()) {
        return kExitUsage;
    }

    std::cout << "wrote " << *runtime_path << '\n' << "wrote " << *cv_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fibbench: twelve Fibonacci algorithms, their exactness limits, and a "
        "benchmark harness"};
    app.require_subcommand(1);
    const int depth_default = default_depth_limit();

    // compute
    auto* compute = app.add_subcommand(
        "compute", "Compute F_n with one, several, or all algorithms");
    std::string compute_selector;
    bool compute_all = false;
    std::int64_t compute_n = 0;
    bool compute_force = false;
    int compute_depth = depth_default;
    compute->add_option("--algo", compute_selector,
                        "Algorithm id, comma list, or 'all'");
    compute->add_flag("--all", compute_all, "Run every algorithm (agreement table)");
    compute->add_option("-n,--n", compute_n, "Index n (negative for negafibonacci)")
        ->required();
    compute->add_flag("--force", compute_force,
                      "Run fib1 beyond its safe ceiling (exponential blow-up)");
    compute->add_option("--depth-limit", compute_depth,
                        "Recursion depth budget (env FIBBENCH_DEPTH_LIMIT)");

    // bench
    auto* bench_cmd = app.add_subcommand(
        "bench", "Benchmark algorithms and write a CSV (or JSON) report");
    std::string bench_group;
    std::string bench_selector;
    std::int64_t bench_n = -1;
    std::string bench_n_range;
    std::uint64_t bench_reps = 200;
    std::uint64_t bench_step = 0;
    std::string bench_out;
    std::string bench_format = "csv";
    bool bench_force = false;
    int bench_depth = depth_default;
    bench_cmd->add_option("--group", bench_group, "Experiment group: g1, g2, g3, g4");
    bench_cmd->add_option("--algo", bench_selector,
                          "Algorithm id, comma list, or 'all' (instead of --group)");
    bench_cmd->add_option("-n,--n", bench_n, "Single index to benchmark");
    bench_cmd->add_option("--n-range", bench_n_range, "Inclusive index range LO:HI");
    bench_cmd->add_option("--reps", bench_reps, "Repetitions per (algo, n) cell")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--step", bench_step,
                          "Sample every step-th n (0 = auto, keeps <=2000 records)");
    bench_cmd->add_option("-o,--out", bench_out, "Output path");
    bench_cmd->add_option("--format", bench_format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_flag("--force", bench_force, "Allow fib1 beyond its safe ceiling");
    bench_cmd->add_option("--depth-limit", bench_depth, "Recursion depth budget");

    // scan
    auto* scan = app.add_subcommand(
        "scan", "Find where an algorithm diverges from the exact values");
    std::string scan_selector;
    std::uint64_t scan_max_n = 200;
    std::string scan_format = "text";
    bool scan_update = false;
    int scan_depth = depth_default;
    scan->add_option("--algo", scan_selector, "Algorithm id, comma list, or 'all'")
        ->required();
    scan->add_option("--max-n", scan_max_n, "Scan n = 0..max-n");
    scan->add_option("--format", scan_format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    scan->add_flag("--update-registry", scan_update,
                   "Cache the measured exactness threshold in the registry");
    scan->add_option("--depth-limit", scan_depth, "Recursion depth budget");

    // report
    auto* report = app.add_subcommand(
        "report", "Render a benchmark CSV as runtime and CV SVG charts");
    std::string report_input;
    std::string report_out_dir;
    std::string report_prefix;
    report->add_option("--input,-i", report_input, "CSV produced by 'bench'")
        ->required();
    report->add_option("--out-dir", report_out_dir, "Output directory (default .)");
    report->add_option("--prefix", report_prefix,
                       "Output filename prefix (default: input stem)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (compute->parsed()) {
        if (compute_selector.empty() && !compute_all) {
            std::cerr << "error: compute needs --algo or --all\n";
            return kExitUsage;
        }
        return cmd_compute(compute_selector, compute_all, compute_n,
                           compute_force, compute_depth);
    }
    if (bench_cmd->parsed()) {
        if (bench_group.empty() == bench_selector.empty()) {
            std::cerr << "error: bench needs exactly one of --group or --algo\n";
            return kExitUsage;
        }
        if (bench_group.empty() && bench_n < 0 && bench_n_range.empty()) {
            std::cerr << "error: bench with --algo needs -n or --n-range\n";
            return kExitUsage;
        }
        return cmd_bench(bench_group, bench_selector, bench_n, bench_n_range,
                         bench_reps, bench_step, bench_out, bench_format,
                         bench_force, bench_depth);
    }
    if (scan->parsed()) {
        return cmd_scan(scan_selector, scan_max_n, scan_format, scan_update,
                        scan_depth);
    }
    if (report->parsed()) {
        return cmd_report(report_input, report_out_dir, report_prefix);
    }
    return kExitUsage;
}
