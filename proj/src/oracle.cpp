#include "fibbench/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fibbench/core_helpers.hpp"

namespace fibbench {
namespace {

// Divergence for the approximate algorithms shows up well below 200 on
// binary64; the measurement scan stops there.
constexpr std::uint64_t kThresholdScanMax = 200;

}  // namespace

BigInt oracle_fib(std::uint64_t n) {
    BigInt low = 0;
    BigInt high = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        low += high;
        low.swap(high);
    }
    return low;
}

ExactnessReport scan_exactness(AlgoId id, std::uint64_t max_n,
                               const RunOptions& options) {
    ExactnessReport report{id, std::nullopt, std::nullopt, max_n};
    BigInt previous = 0;
    BigInt expected = 0;  // rolls forward with n, same recurrence as the oracle
    for (std::uint64_t n = 0; n <= max_n; ++n) {
        if (n == 1) {
            expected = 1;
        } else if (n >= 2) {
            previous += expected;
            previous.swap(expected);
        }
        detail::RawResult raw = detail::run_raw(id, n, options);
        if (!raw.value.has_value()) {
            if (!report.first_failed_n.has_value()) {
                report.first_failed_n = n;
            }
            continue;
        }
        if (!report.first_inexact_n.has_value() && *raw.value != expected) {
            report.first_inexact_n = n;
        }
    }
    return report;
}

std::uint64_t measured_exact_through(AlgoId id) {
    auto& registry = Registry::instance();
    if (auto cached = registry.exact_through(id)) {
        return *cached;
    }
    const ExactnessReport report = scan_exactness(id, kThresholdScanMax);
    std::uint64_t threshold = kThresholdScanMax;
    if (report.first_inexact_n.has_value()) {
        threshold = *report.first_inexact_n == 0 ? 0 : *report.first_inexact_n - 1;
    } else if (report.first_failed_n.has_value()) {
        threshold = *report.first_failed_n == 0 ? 0 : *report.first_failed_n - 1;
    }
    registry.set_exact_through(id, threshold);
    return threshold;
}

std::uint64_t estimate_bits(std::uint64_t n) {
    const double bits =
        static_cast<double>(n) * std::log2(kPhi) - 0.5 * std::log2(5.0);
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(bits)));
}

nlohmann::json to_json(const ExactnessReport& report) {
    nlohmann::json j{
        {"algo", to_string(report.algo)},
        {"scanned_max", report.scanned_max},
        {"first_inexact_n", nullptr},
        {"first_failed_n", nullptr},
    };
    if (report.first_inexact_n.has_value()) {
        j["first_inexact_n"] = *report.first_inexact_n;
    }
    if (report.first_failed_n.has_value()) {
        j["first_failed_n"] = *report.first_failed_n;
    }
    return j;
}

}  // namespace fibbench
