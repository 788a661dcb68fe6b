#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>

namespace fibbench {

enum class AlgoId {
    Fib1,
    Fib2,
    Fib3,
    Fib4,
    Fib5,
    Fib6,
    Fib7,
    Fib8,
    Fib9,
    Fib10,
    Fib11,
    Fib12,
};

inline constexpr std::size_t kAlgorithmCount = 12;

enum class ExactnessClass { Exact, ApproximateBeyondThreshold };

enum class RecursionClass { Recursive, Iterative, ClosedForm };

/// Asymptotic runtime tags; one set counts word operations (constant-time
/// arithmetic), the other counts bit operations.
enum class TimeClass { Constant, LogN, Linear, Quadratic, ExponentialPhiN };

struct AlgorithmDescriptor {
    AlgoId id;
    std::string_view name;
    ExactnessClass exactness;
    RecursionClass recursion;
    TimeClass time_const_arith;
    TimeClass time_bit_ops;
    /// Ceiling above which invoking the algorithm is impractical or doomed:
    /// exponential blow-up (fib1), the default recursion budget (fib2), or
    /// binary64 range (fib4/fib5/fib12). Unset for the fast exact algorithms.
    std::optional<std::uint64_t> max_safe_n;
};

/// Immutable table of the twelve algorithms plus the write-once cache of
/// measured exactness thresholds (filled before benchmarking begins).
class Registry {
public:
    static Registry& instance();

    std::span<const AlgorithmDescriptor> descriptors() const;
    const AlgorithmDescriptor& descriptor(AlgoId id) const;

    /// Largest n for which the algorithm matched the oracle during the
    /// threshold scan; empty until measured. First write wins.
    std::optional<std::uint64_t> exact_through(AlgoId id) const;
    void set_exact_through(AlgoId id, std::uint64_t n);

private:
    Registry() = default;

    mutable std::mutex mutex_;
    std::array<std::optional<std::uint64_t>, kAlgorithmCount> exact_through_{};
};

std::string_view to_string(AlgoId id);
const char* to_string(TimeClass t);
std::optional<AlgoId> parse_algo_id(std::string_view name);

}  // namespace fibbench
