#include "fibbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fibbench/oracle.hpp"

namespace fibbench {
namespace {

// Keeps `value` observable so the timed call cannot be optimized away.
template <typename T>
inline void consume(const T& value) {
    asm volatile("" : : "r,m"(value) : "memory");
}

const std::vector<AlgoId>& all_algorithms() {
    static const std::vector<AlgoId> ids = [] {
        std::vector<AlgoId> v;
        for (const auto& d : Registry::instance().descriptors()) {
            v.push_back(d.id);
        }
        return v;
    }();
    return ids;
}

std::vector<AlgoId> all_except(std::initializer_list<AlgoId> excluded) {
    std::vector<AlgoId> v;
    for (AlgoId id : all_algorithms()) {
        if (std::find(excluded.begin(), excluded.end(), id) == excluded.end()) {
            v.push_back(id);
        }
    }
    return v;
}

// Approximate-class algorithms label outcomes against the measured
// threshold; force that one-time scan now so it never lands inside a timed
// region.
void ensure_classification_ready(AlgoId id) {
    const auto& d = Registry::instance().descriptor(id);
    if (d.exactness == ExactnessClass::ApproximateBeyondThreshold) {
        (void)measured_exact_through(id);
    }
}

}  // namespace

InvalidSampleError::InvalidSampleError(AlgoId algo_in, std::uint64_t n_in,
                                       FibFailure failure_in)
    : std::runtime_error([&] {
          std::ostringstream message;
          message << "invalid sample: " << to_string(algo_in) << " at n="
                  << n_in << " failed with " << to_string(failure_in);
          return message.str();
      }()),
      algo(algo_in),
      n(n_in),
      failure(failure_in) {}

std::span<const ExperimentGroup> experiment_groups() {
    static const std::vector<ExperimentGroup> groups = [] {
        std::vector<ExperimentGroup> g;
        g.push_back({GroupId::G1, 0, 30, all_algorithms()});
        g.push_back({GroupId::G2, 0, 70, all_except({AlgoId::Fib1})});
        g.push_back({GroupId::G3, 0, 900,
                     all_except({AlgoId::Fib1, AlgoId::Fib4, AlgoId::Fib5,
                                 AlgoId::Fib12})});
        g.push_back({GroupId::G4, 0, 10000,
                     {AlgoId::Fib3, AlgoId::Fib6, AlgoId::Fib8, AlgoId::Fib10,
                      AlgoId::Fib11}});
        return g;
    }();
    return groups;
}

const ExperimentGroup& experiment_group(GroupId id) {
    return experiment_groups()[static_cast<std::size_t>(id)];
}

std::string_view to_string(GroupId id) {
    switch (id) {
        case GroupId::G1: return "g1";
        case GroupId::G2: return "g2";
        case GroupId::G3: return "g3";
        case GroupId::G4: return "g4";
    }
    return "?";
}

std::optional<GroupId> parse_group_id(std::string_view name) {
    for (const auto& group : experiment_groups()) {
        if (to_string(group.id) == name) {
            return group.id;
        }
    }
    return std::nullopt;
}

SampleStats compute_stats(std::span<const double> samples) {
    SampleStats stats;
    if (samples.empty()) {
        return stats;
    }
    const double count = static_cast<double>(samples.size());
    stats.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
    double squared = 0.0;
    for (double s : samples) {
        const double d = s - stats.mean;
        squared += d * d;
    }
    stats.stddev = std::sqrt(squared / count);
    stats.cv = stats.stddev == 0.0 ? 0.0 : stats.stddev / stats.mean;
    return stats;
}

double time_once(AlgoId id, std::uint64_t n, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const FibOutcome outcome = run_algorithm(id, n, options);
    const auto stop = std::chrono::steady_clock::now();
    consume(outcome);
    if (!outcome.ok()) {
        throw InvalidSampleError(id, n, *outcome.failure);
    }
    return static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
            .count());
}

BenchRecord bench_with_timer(AlgoId id, std::uint64_t n, std::uint64_t reps,
                             const TimerFn& timer) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (std::uint64_t i = 0; i < reps; ++i) {
        samples.push_back(timer(id, n));
    }
    const SampleStats stats = compute_stats(samples);
    return {id, n, reps, stats.mean, stats.stddev, stats.cv};
}

BenchRecord bench(AlgoId id, std::uint64_t n, std::uint64_t reps,
                  const RunOptions& options) {
    ensure_classification_ready(id);
    return bench_with_timer(id, n, reps, [&options](AlgoId a, std::uint64_t m) {
        return time_once(a, m, options);
    });
}

RankingSummary rank_records(std::span<const BenchRecord> records,
                            std::optional<GroupId> group) {
    struct Total {
        AlgoId id;
        double total_ns = 0.0;
    };
    std::vector<Total> totals;
    for (const BenchRecord& record : records) {
        auto it = std::find_if(totals.begin(), totals.end(), [&](const Total& t) {
            return t.id == record.algo;
        });
        if (it == totals.end()) {
            totals.push_back({record.algo, record.mean_ns});
        } else {
            it->total_ns += record.mean_ns;
        }
    }
    std::sort(totals.begin(), totals.end(), [](const Total& a, const Total& b) {
        if (a.total_ns != b.total_ns) {
            return a.total_ns < b.total_ns;
        }
        return static_cast<int>(a.id) < static_cast<int>(b.id);
    });
    RankingSummary summary;
    summary.group = group;
    for (const Total& t : totals) {
        summary.fastest_to_slowest.push_back(t.id);
    }
    if (!totals.empty() && totals.front().total_ns > 0.0) {
        summary.ratio_max_min = totals.back().total_ns / totals.front().total_ns;
    }
    return summary;
}

namespace {

GroupRunResult run_group_impl(const ExperimentGroup& group, std::uint64_t n_step,
                              const std::function<BenchRecord(AlgoId, std::uint64_t)>& cell) {
    GroupRunResult result;
    for (AlgoId id : group.algorithms) {
        for (std::uint64_t n = group.n_min;; n += n_step) {
            result.records.push_back(cell(id, n));
            if (n_step > group.n_max - n) {  // n + n_step would pass n_max
                break;
            }
        }
    }
    result.ranking = rank_records(result.records, group.id);
    return result;
}

}  // namespace

GroupRunResult run_group(const ExperimentGroup& group, std::uint64_t reps,
                         std::uint64_t n_step, const RunOptions& options) {
    for (AlgoId id : group.algorithms) {
        ensure_classification_ready(id);
    }
    return run_group_impl(group, n_step, [&](AlgoId id, std::uint64_t n) {
        return bench(id, n, reps, options);
    });
}

GroupRunResult run_group_with_timer(const ExperimentGroup& group,
                                    std::uint64_t reps, std::uint64_t n_step,
                                    const TimerFn& timer) {
    return run_group_impl(group, n_step, [&](AlgoId id, std::uint64_t n) {
        return bench_with_timer(id, n, reps, timer);
    });
}

std::uint64_t default_step(const ExperimentGroup& group,
                           std::uint64_t max_records) {
    const std::uint64_t values = group.n_max - group.n_min + 1;
    const std::uint64_t cells = values * group.algorithms.size();
    if (max_records == 0 || cells <= max_records) {
        return 1;
    }
    return (cells + max_records - 1) / max_records;
}

}  // namespace fibbench
