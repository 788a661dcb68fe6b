#include "fibbench/algorithms.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>
#include <utility>

#include "fibbench/core_helpers.hpp"
#include "fibbench/oracle.hpp"

namespace fibbench {

const char* to_string(FibStatus status) {
    switch (status) {
        case FibStatus::Exact: return "Exact";
        case FibStatus::Approximate: return "Approximate";
        case FibStatus::Failed: return "Failed";
    }
    return "?";
}

const char* to_string(FibFailure failure) {
    switch (failure) {
        case FibFailure::RecursionDepthExceeded: return "RecursionDepthExceeded";
        case FibFailure::FloatOverflow: return "FloatOverflow";
    }
    return "?";
}

namespace {

using detail::RawResult;

RawResult raw_value(BigInt v) { return {std::move(v), std::nullopt}; }
RawResult raw_failure(FibFailure f) { return {std::nullopt, f}; }

RawResult fib1_raw(std::uint64_t n, const RunOptions& options) {
    DepthGuard guard(options.depth_limit);
    auto rec = [&guard](auto&& self, std::uint64_t k) -> BigInt {
        DepthScope frame(guard);
        if (k < 2) {
            return BigInt(k);
        }
        return self(self, k - 1) + self(self, k - 2);
    };
    try {
        return raw_value(rec(rec, n));
    } catch (const DepthLimitError&) {
        return raw_failure(FibFailure::RecursionDepthExceeded);
    }
}

RawResult fib2_raw(std::uint64_t n, const RunOptions& options) {
    // The call chain f(n) -> f(n-1) -> ... -> f(1) needs exactly n frames,
    // so a call that cannot fit the budget is refused before the memo table
    // for it is allocated.
    if (options.depth_limit < 1 ||
        n > static_cast<std::uint64_t>(options.depth_limit)) {
        return raw_failure(FibFailure::RecursionDepthExceeded);
    }
    DepthGuard guard(options.depth_limit);
    // Memo table lives for this call only; consecutive indices, so a flat
    // vector with -1 sentinels plays the role of the cache.
    std::vector<BigInt> memo(n + 1, BigInt(-1));
    auto rec = [&guard, &memo](auto&& self, std::uint64_t k) -> const BigInt& {
        DepthScope frame(guard);
        BigInt& slot = memo[k];
        if (slot.sign() < 0) {
            if (k < 2) {
                slot = k;
            } else {
                slot = self(self, k - 1) + self(self, k - 2);
            }
        }
        return slot;
    };
    try {
        return raw_value(rec(rec, n));
    } catch (const DepthLimitError&) {
        return raw_failure(FibFailure::RecursionDepthExceeded);
    }
}

RawResult fib3_raw(std::uint64_t n, const RunOptions&) {
    BigInt previous = 0;
    BigInt current = 1;
    if (n == 0) {
        return raw_value(std::move(previous));
    }
    for (std::uint64_t i = 1; i < n; ++i) {
        previous += current;
        previous.swap(current);
    }
    return raw_value(std::move(current));
}

double phi_power(double base, std::uint64_t n, const RunOptions& options,
                 bool& overflowed) {
    if (options.use_num_pow_iter) {
        Float64 p = num_pow_iter(base, n);
        overflowed = p.overflowed;
        return p.value;
    }
    double p = std::pow(base, static_cast<double>(n));
    overflowed = !std::isfinite(p);
    return p;
}

RawResult fib4_raw(std::uint64_t n, const RunOptions& options) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    bool overflowed = false;
    const double phi_n = phi_power(kPhi, n, options, overflowed);
    if (overflowed) {
        return raw_failure(FibFailure::FloatOverflow);
    }
    bool psi_overflowed = false;  // |psi| < 1, cannot actually overflow
    const double psi_n = phi_power(kPsi, n, options, psi_overflowed);
    try {
        return raw_value(round_half_away((phi_n - psi_n) / kSqrt5));
    } catch (const NotFiniteError&) {
        return raw_failure(FibFailure::FloatOverflow);
    }
}

RawResult fib5_raw(std::uint64_t n, const RunOptions& options) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    bool overflowed = false;
    const double phi_n = phi_power(kPhi, n, options, overflowed);
    if (overflowed) {
        return raw_failure(FibFailure::FloatOverflow);
    }
    try {
        return raw_value(round_half_away(phi_n / kSqrt5));
    } catch (const NotFiniteError&) {
        return raw_failure(FibFailure::FloatOverflow);
    }
}

RawResult fib6_raw(std::uint64_t n, const RunOptions&) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    // Q^(n-1) by n-2 sequential optimized multiplies; F_n is the largest
    // entry, which sits at m00.
    Mat2 power = Mat2::q();
    for (std::uint64_t i = 2; i < n; ++i) {
        power = mat_mul_opt(power);
    }
    return raw_value(std::move(power.m00));
}

RawResult fib7_raw(std::uint64_t n, const RunOptions& options) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    DepthGuard guard(options.depth_limit);
    try {
        return raw_value(std::move(mat_pow_recur(Mat2::q(), n - 1, &guard).m00));
    } catch (const DepthLimitError&) {
        return raw_failure(FibFailure::RecursionDepthExceeded);
    }
}

RawResult fib8_raw(std::uint64_t n, const RunOptions&) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    return raw_value(std::move(mat_pow_iter(Mat2::q(), n - 1).m00));
}

RawResult fib9_raw(std::uint64_t n, const RunOptions& options) {
    DepthGuard guard(options.depth_limit);
    std::unordered_map<std::uint64_t, BigInt> memo{{0, 0}, {1, 1}, {2, 1}};
    auto rec = [&guard, &memo](auto&& self, std::uint64_t k) -> const BigInt& {
        DepthScope frame(guard);
        if (auto it = memo.find(k); it != memo.end()) {
            return it->second;
        }
        const std::uint64_t half = k / 2;
        const BigInt& low = self(self, half);
        const BigInt& high = self(self, half + 1);
        BigInt result;
        if (k % 2 == 1) {
            result = high * high + low * low;
        } else {
            result = 2 * high * low - low * low;
        }
        return memo.emplace(k, std::move(result)).first->second;
    };
    try {
        return raw_value(rec(rec, n));
    } catch (const DepthLimitError&) {
        return raw_failure(FibFailure::RecursionDepthExceeded);
    }
}

RawResult fib10_raw(std::uint64_t n, const RunOptions&) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    auto table = detail::fib10_table(n);
    return raw_value(std::move(table.at(n)));
}

// Marking phase shared by fib10 and fib11: closure of {n} under the identity
// children, collected through a FIFO worklist. An even index 2k depends on
// {k, k+1} for fib10's identity and on {k-1, k} for fib11's.
std::vector<std::uint64_t> mark_needed(std::uint64_t n,
                                       bool even_uses_predecessor) {
    std::set<std::uint64_t> marked;
    std::deque<std::uint64_t> worklist{n};
    while (!worklist.empty()) {
        const std::uint64_t m = worklist.front();
        worklist.pop_front();
        if (m <= 2 || marked.contains(m)) {
            continue;
        }
        marked.insert(m);
        const std::uint64_t half = m / 2;
        if (m % 2 == 0 && even_uses_predecessor) {
            worklist.push_back(half - 1);
            worklist.push_back(half);
        } else {
            worklist.push_back(half);
            worklist.push_back(half + 1);
        }
    }
    return {marked.begin(), marked.end()};
}

RawResult fib11_raw(std::uint64_t n, const RunOptions&) {
    if (n <= 2) {
        return raw_value(BigInt(n == 0 ? 0 : 1));
    }
    std::unordered_map<std::uint64_t, BigInt> table{{0, 0}, {1, 1}, {2, 1}};
    for (std::uint64_t m : mark_needed(n, /*even_uses_predecessor=*/true)) {
        const std::uint64_t half = m / 2;
        const BigInt& low = table.at(half);
        BigInt result;
        if (m % 2 == 1) {
            const BigInt& high = table.at(half + 1);
            result = high * high + low * low;
        } else {
            const BigInt& before = table.at(half - 1);
            result = low * low + 2 * before * low;
        }
        table.emplace(m, std::move(result));
    }
    return raw_value(std::move(table.at(n)));
}

RawResult fib12_raw(std::uint64_t n, const RunOptions&) {
    if (n < 2) {
        return raw_value(BigInt(n));
    }
    // Running value starts at F_2 = 1; each step multiplies by phi and
    // rounds, per F_n = [phi * F_{n-1}].
    double running = 1.0;
    for (std::uint64_t i = 3; i <= n; ++i) {
        running = std::round(running * kPhi);
        if (!std::isfinite(running)) {
            return raw_failure(FibFailure::FloatOverflow);
        }
    }
    try {
        return raw_value(round_half_away(running));
    } catch (const NotFiniteError&) {
        return raw_failure(FibFailure::FloatOverflow);
    }
}

FibStatus classify(AlgoId id, std::uint64_t n) {
    const auto& descriptor = Registry::instance().descriptor(id);
    if (descriptor.exactness == ExactnessClass::Exact) {
        return FibStatus::Exact;
    }
    return n <= measured_exact_through(id) ? FibStatus::Exact
                                           : FibStatus::Approximate;
}

}  // namespace

namespace detail {

RawResult run_raw(AlgoId id, std::uint64_t n, const RunOptions& options) {
    switch (id) {
        case AlgoId::Fib1: return fib1_raw(n, options);
        case AlgoId::Fib2: return fib2_raw(n, options);
        case AlgoId::Fib3: return fib3_raw(n, options);
        case AlgoId::Fib4: return fib4_raw(n, options);
        case AlgoId::Fib5: return fib5_raw(n, options);
        case AlgoId::Fib6: return fib6_raw(n, options);
        case AlgoId::Fib7: return fib7_raw(n, options);
        case AlgoId::Fib8: return fib8_raw(n, options);
        case AlgoId::Fib9: return fib9_raw(n, options);
        case AlgoId::Fib10: return fib10_raw(n, options);
        case AlgoId::Fib11: return fib11_raw(n, options);
        case AlgoId::Fib12: return fib12_raw(n, options);
    }
    return raw_failure(FibFailure::RecursionDepthExceeded);  // unreachable
}

std::vector<std::uint64_t> fib10_marks(std::uint64_t n) {
    if (n <= 2) {
        return {};
    }
    return mark_needed(n, /*even_uses_predecessor=*/false);
}

std::map<std::uint64_t, BigInt> fib10_table(std::uint64_t n) {
    std::map<std::uint64_t, BigInt> table{{0, 0}, {1, 1}, {2, 1}};
    for (std::uint64_t m : fib10_marks(n)) {
        const std::uint64_t half = m / 2;
        const BigInt& low = table.at(half);
        const BigInt& high = table.at(half + 1);
        BigInt result;
        if (m % 2 == 1) {
            result = high * high + low * low;
        } else {
            result = 2 * high * low - low * low;
        }
        table.emplace(m, std::move(result));
    }
    return table;
}

}  // namespace detail

FibOutcome run_algorithm(AlgoId id, std::uint64_t n, const RunOptions& options) {
    RawResult raw = detail::run_raw(id, n, options);
    if (raw.failure.has_value()) {
        return FibOutcome::failed(*raw.failure);
    }
    if (classify(id, n) == FibStatus::Exact) {
        return FibOutcome::exact(std::move(*raw.value));
    }
    return FibOutcome::approximate(std::move(*raw.value));
}

FibOutcome fib1(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib1, n, o); }
FibOutcome fib2(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib2, n, o); }
FibOutcome fib3(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib3, n, o); }
FibOutcome fib4(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib4, n, o); }
FibOutcome fib5(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib5, n, o); }
FibOutcome fib6(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib6, n, o); }
FibOutcome fib7(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib7, n, o); }
FibOutcome fib8(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib8, n, o); }
FibOutcome fib9(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib9, n, o); }
FibOutcome fib10(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib10, n, o); }
FibOutcome fib11(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib11, n, o); }
FibOutcome fib12(std::uint64_t n, const RunOptions& o) { return run_algorithm(AlgoId::Fib12, n, o); }

FibOutcome fib_signed(AlgoId id, std::int64_t n, const RunOptions& options) {
    if (n >= 0) {
        return run_algorithm(id, static_cast<std::uint64_t>(n), options);
    }
    // Magnitude of n without overflowing on INT64_MIN.
    const std::uint64_t magnitude =
        static_cast<std::uint64_t>(-(n + 1)) + 1u;
    FibOutcome outcome = run_algorithm(id, magnitude, options);
    if (outcome.value.has_value()) {
        outcome.value = negafib(magnitude, std::move(*outcome.value));
    }
    return outcome;
}

}  // namespace fibbench
