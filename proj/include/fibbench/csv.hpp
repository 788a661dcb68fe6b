#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "fibbench/bench.hpp"

namespace fibbench {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One row per record under the header `algo,n,reps,mean_ns,stddev_ns,cv`,
/// LF line endings, floats with 3 decimal places. When a ranking is given
/// it is appended as a trailing `#` comment block.
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records,
                     const RankingSummary* ranking = nullptr);

/// Parses what write_bench_csv emits; `#` comment lines are skipped.
/// Throws CsvError on a malformed header or row. An empty body yields an
/// empty vector.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

}  // namespace fibbench
