#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fibbench/bigint.hpp"
#include "fibbench/outcome.hpp"
#include "fibbench/registry.hpp"

namespace fibbench {

inline constexpr int kDefaultDepthLimit = 1000;

struct RunOptions {
    /// Recursion budget charged by the recursive algorithms.
    int depth_limit = kDefaultDepthLimit;
    /// Evaluate phi^n with num_pow_iter instead of std::pow in fib4/fib5.
    bool use_num_pow_iter = false;
};

// The twelve algorithms. Each takes n >= 0 and returns F_n; negative
// indices go through fib_signed below.

/// Naive double recursion on F_n = F_{n-1} + F_{n-2}. Exponential time.
FibOutcome fib1(std::uint64_t n, const RunOptions& options = {});
/// Top-down recursion with a per-call memo table; depth grows with n.
FibOutcome fib2(std::uint64_t n, const RunOptions& options = {});
/// Bottom-up iteration in constant storage.
FibOutcome fib3(std::uint64_t n, const RunOptions& options = {});
/// Closed form (phi^n - psi^n)/sqrt(5), rounded. Approximate for large n.
FibOutcome fib4(std::uint64_t n, const RunOptions& options = {});
/// Closed form phi^n/sqrt(5), rounded. Approximate for large n.
FibOutcome fib5(std::uint64_t n, const RunOptions& options = {});
/// Largest entry of Q^{n-1}, built by n-2 sequential optimized multiplies.
FibOutcome fib6(std::uint64_t n, const RunOptions& options = {});
/// Q^{n-1} by recursive repeated squaring.
FibOutcome fib7(std::uint64_t n, const RunOptions& options = {});
/// Q^{n-1} by iterative repeated squaring.
FibOutcome fib8(std::uint64_t n, const RunOptions& options = {});
/// Top-down doubling: F_{2k+1} = F_{k+1}^2 + F_k^2, F_{2k} = 2F_{k+1}F_k - F_k^2.
FibOutcome fib9(std::uint64_t n, const RunOptions& options = {});
/// Doubling as in fib9, but iterative: a marking phase finds the needed
/// indices, a filling phase computes them in ascending order.
FibOutcome fib10(std::uint64_t n, const RunOptions& options = {});
/// Doubling with the alternative even identity F_{2k} = F_k^2 + 2F_{k-1}F_k,
/// iterative two-phase; n = 2 is a mandatory base case.
FibOutcome fib11(std::uint64_t n, const RunOptions& options = {});
/// Iterated rounding: F_n = [phi * F_{n-1}] carried in a binary64 value.
FibOutcome fib12(std::uint64_t n, const RunOptions& options = {});

/// Dispatch by registry id.
FibOutcome run_algorithm(AlgoId id, std::uint64_t n, const RunOptions& options = {});

/// Signed-index wrapper: n < 0 computes the algorithm at |n| and applies the
/// negafibonacci sign rule. Approximate/Failed statuses propagate.
FibOutcome fib_signed(AlgoId id, std::int64_t n, const RunOptions& options = {});

namespace detail {

/// Value computation without exactness classification; the scan in the
/// exactness oracle uses this to avoid feeding results back into the
/// threshold it is measuring.
struct RawResult {
    std::optional<BigInt> value;
    std::optional<FibFailure> failure;
};
RawResult run_raw(AlgoId id, std::uint64_t n, const RunOptions& options = {});

/// Indices (> 2) marked by fib10's marking phase, ascending. The last entry
/// is n itself for n > 2; size is O(lg n).
std::vector<std::uint64_t> fib10_marks(std::uint64_t n);

/// Full memo table produced by fib10's filling phase (base values included).
std::map<std::uint64_t, BigInt> fib10_table(std::uint64_t n);

}  // namespace detail

}  // namespace fibbench
