#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "fibbench/algorithms.hpp"
#include "fibbench/bigint.hpp"
#include "fibbench/registry.hpp"

namespace fibbench {

/// Ground-truth F_n. A deliberately separate minimal loop, kept independent
/// of the algorithms module so a bug there cannot validate itself.
BigInt oracle_fib(std::uint64_t n);

/// Result of a divergence scan for one algorithm.
struct ExactnessReport {
    AlgoId algo;
    std::optional<std::uint64_t> first_inexact_n;
    std::optional<std::uint64_t> first_failed_n;
    std::uint64_t scanned_max = 0;

    friend bool operator==(const ExactnessReport&, const ExactnessReport&) = default;
};

/// Ascending scan n = 0..max_n comparing the algorithm's value against
/// oracle_fib; records the first mismatch and the first failed outcome.
/// Exact algorithms yield a report with both fields absent.
ExactnessReport scan_exactness(AlgoId id, std::uint64_t max_n,
                               const RunOptions& options = {});

/// Largest n for which the algorithm matched the oracle, measured once by
/// an ascending scan and cached in the registry. Algorithms classified
/// Exact never need this; fib4/fib5/fib12 use it to label their outcomes.
std::uint64_t measured_exact_through(AlgoId id);

/// Predicted bit length of F_n from the closed form:
/// lg F_n ~ n lg(phi) - lg(sqrt 5). An estimate, typically within a couple
/// of bits of the true length for n >= 2.
std::uint64_t estimate_bits(std::uint64_t n);

nlohmann::json to_json(const ExactnessReport& report);

}  // namespace fibbench
