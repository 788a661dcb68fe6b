#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibbench/algorithms.hpp"
#include "fibbench/registry.hpp"

namespace fibbench {

/// Timing statistics for one (algorithm, n) cell.
struct BenchRecord {
    AlgoId algo;
    std::uint64_t n = 0;
    std::uint64_t reps = 0;
    double mean_ns = 0.0;
    double stddev_ns = 0.0;  // population standard deviation
    double cv = 0.0;         // stddev / mean; 0 when stddev is 0
};

enum class GroupId { G1, G2, G3, G4 };

struct ExperimentGroup {
    GroupId id;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    std::vector<AlgoId> algorithms;
};

/// The four experiment groups: g1 = [0,30] all twelve; g2 = [0,70] without
/// fib1; g3 = [0,900] without fib1 and the approximate algorithms; g4 =
/// [0,10000] only the fast iterative exact algorithms.
std::span<const ExperimentGroup> experiment_groups();
const ExperimentGroup& experiment_group(GroupId id);

std::string_view to_string(GroupId id);
std::optional<GroupId> parse_group_id(std::string_view name);

struct RankingSummary {
    std::optional<GroupId> group;
    /// By total runtime summed over the n range, fastest first; ties broken
    /// by algorithm id order.
    std::vector<AlgoId> fastest_to_slowest;
    double ratio_max_min = 1.0;
};

/// A repetition failed: the algorithm returned a Failed outcome, which
/// invalidates the whole sample.
class InvalidSampleError : public std::runtime_error {
public:
    InvalidSampleError(AlgoId algo, std::uint64_t n, FibFailure failure);

    AlgoId algo;
    std::uint64_t n;
    FibFailure failure;
};

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;
    double cv = 0.0;
};

/// Mean, population stddev and CV of a sample set.
SampleStats compute_stats(std::span<const double> samples);

/// Duration of a single invocation in nanoseconds (monotonic clock). The
/// outcome is consumed after timing so the call cannot be elided. Throws
/// InvalidSampleError on a Failed outcome.
double time_once(AlgoId id, std::uint64_t n, const RunOptions& options = {});

/// reps timed invocations aggregated into one record. No warm-up samples
/// are discarded.
BenchRecord bench(AlgoId id, std::uint64_t n, std::uint64_t reps,
                  const RunOptions& options = {});

/// Duration source injectable for tests: returns nanoseconds for one
/// invocation of (algo, n).
using TimerFn = std::function<double(AlgoId, std::uint64_t)>;

BenchRecord bench_with_timer(AlgoId id, std::uint64_t n, std::uint64_t reps,
                             const TimerFn& timer);

struct GroupRunResult {
    std::vector<BenchRecord> records;
    RankingSummary ranking;
};

/// Benchmark every included (algo, n) cell of a group, sampling the n range
/// with the given step, then rank algorithms by summed mean runtime.
GroupRunResult run_group(const ExperimentGroup& group, std::uint64_t reps,
                         std::uint64_t n_step, const RunOptions& options = {});
GroupRunResult run_group_with_timer(const ExperimentGroup& group,
                                    std::uint64_t reps, std::uint64_t n_step,
                                    const TimerFn& timer);

/// Ranking over arbitrary records (summed means per algorithm).
RankingSummary rank_records(std::span<const BenchRecord> records,
                            std::optional<GroupId> group);

/// Largest step 1 keeps a group's record count at or below `max_records`;
/// grows the step as needed for the bigger groups.
std::uint64_t default_step(const ExperimentGroup& group,
                           std::uint64_t max_records = 2000);

}  // namespace fibbench
