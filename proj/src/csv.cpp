#include "fibbench/csv.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fibbench {
namespace {

constexpr std::string_view kHeader = "algo,n,reps,mean_ns,stddev_ns,cv";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::uint64_t parse_u64(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw CsvError("line " + std::to_string(line_no) +
                       ": expected an integer, got '" + std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, std::size_t line_no) {
    try {
        std::size_t consumed = 0;
        const double value = std::stod(std::string(field), &consumed);
        if (consumed != field.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return value;
    } catch (const std::exception&) {
        throw CsvError("line " + std::to_string(line_no) +
                       ": expected a number, got '" + std::string(field) + "'");
    }
}

}  // namespace

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records,
                     const RankingSummary* ranking) {
    out << kHeader << '\n';
    out << std::fixed << std::setprecision(3);
    for (const BenchRecord& r : records) {
        out << to_string(r.algo) << ',' << r.n << ',' << r.reps << ','
            << r.mean_ns << ',' << r.stddev_ns << ',' << r.cv << '\n';
    }
    if (ranking != nullptr) {
        out << "# ranking";
        if (ranking->group.has_value()) {
            out << " group=" << to_string(*ranking->group);
        }
        out << " fastest_to_slowest=";
        for (std::size_t i = 0; i < ranking->fastest_to_slowest.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << to_string(ranking->fastest_to_slowest[i]);
        }
        out << '\n';
        out << "# ratio_max_min=" << ranking->ratio_max_min << '\n';
    }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<BenchRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw CsvError("line " + std::to_string(line_no) +
                               ": expected header '" + std::string(kHeader) +
                               "', got '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw CsvError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                           std::to_string(fields.size()));
        }
        const auto algo = parse_algo_id(fields[0]);
        if (!algo.has_value()) {
            throw CsvError("line " + std::to_string(line_no) +
                           ": unknown algorithm '" + std::string(fields[0]) + "'");
        }
        BenchRecord record;
        record.algo = *algo;
        record.n = parse_u64(fields[1], line_no);
        record.reps = parse_u64(fields[2], line_no);
        record.mean_ns = parse_double(fields[3], line_no);
        record.stddev_ns = parse_double(fields[4], line_no);
        record.cv = parse_double(fields[5], line_no);
        records.push_back(record);
    }
    if (!header_seen) {
        throw CsvError("missing header line");
    }
    return records;
}

}  // namespace fibbench
