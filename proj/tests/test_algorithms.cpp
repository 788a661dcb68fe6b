#include "fibbench/algorithms.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "fibbench/core_helpers.hpp"
#include "fibbench/oracle.hpp"
#include "test_util.hpp"

using namespace fibbench;

namespace {

BigInt value_of(const FibOutcome& outcome) {
    REQUIRE(outcome.ok());
    return *outcome.value;
}

}  // namespace

TEST_CASE("registry holds the twelve algorithms with their complexity rows") {
    const auto descriptors = Registry::instance().descriptors();
    REQUIRE(descriptors.size() == kAlgorithmCount);
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        CHECK(static_cast<std::size_t>(descriptors[i].id) == i);
        CHECK(parse_algo_id(descriptors[i].name) == descriptors[i].id);
    }

    using TC = TimeClass;
    const std::vector<std::pair<TC, TC>> expected_rows = {
        {TC::ExponentialPhiN, TC::ExponentialPhiN},  // fib1
        {TC::Linear, TC::Quadratic},                 // fib2
        {TC::Linear, TC::Quadratic},                 // fib3
        {TC::Constant, TC::Constant},                // fib4
        {TC::Constant, TC::Constant},                // fib5
        {TC::Linear, TC::Quadratic},                 // fib6
        {TC::LogN, TC::Linear},                      // fib7
        {TC::LogN, TC::Linear},                      // fib8
        {TC::LogN, TC::Linear},                      // fib9
        {TC::LogN, TC::Linear},                      // fib10
        {TC::LogN, TC::Linear},                      // fib11
        {TC::Linear, TC::Quadratic},                 // fib12
    };
    for (std::size_t i = 0; i < expected_rows.size(); ++i) {
        CHECK(descriptors[i].time_const_arith == expected_rows[i].first);
        CHECK(descriptors[i].time_bit_ops == expected_rows[i].second);
    }
    CHECK(Registry::instance().descriptor(AlgoId::Fib1).max_safe_n == 40);
    CHECK(parse_algo_id("fib0") == std::nullopt);
    CHECK(parse_algo_id("") == std::nullopt);
}

TEST_CASE("fib1 base cases and small values") {
    CHECK(value_of(fib1(0)) == 0);
    CHECK(value_of(fib1(1)) == 1);
    CHECK(value_of(fib1(9)) == 34);
    CHECK(value_of(fib1(30)) == 832040);
}

TEST_CASE("fib1 honors the depth guard") {
    RunOptions tight;
    tight.depth_limit = 20;
    const FibOutcome outcome = fib1(25, tight);
    REQUIRE_FALSE(outcome.ok());
    CHECK(outcome.failure == FibFailure::RecursionDepthExceeded);
    CHECK_FALSE(outcome.value.has_value());
}

TEST_CASE("fib2 memoized recursion") {
    CHECK(value_of(fib2(2)) == 1);
    CHECK(value_of(fib2(70)) == BigInt("190392490709135"));
    CHECK(value_of(fib2(70)) == oracle_fib(70));
}

TEST_CASE("fib2 fails past the recursion budget where fib3 succeeds") {
    const FibOutcome failed = fib2(5000);
    REQUIRE_FALSE(failed.ok());
    CHECK(failed.failure == FibFailure::RecursionDepthExceeded);

    const FibOutcome ok = fib3(5000);
    REQUIRE(ok.ok());
    CHECK(*ok.value == oracle_fib(5000));

    // the budget boundary is exact: n frames for fib2(n)
    RunOptions limit100;
    limit100.depth_limit = 100;
    CHECK(fib2(100, limit100).ok());
    CHECK_FALSE(fib2(101, limit100).ok());
}

TEST_CASE("fib3 iterates in constant storage") {
    CHECK(value_of(fib3(0)) == 0);
    CHECK(value_of(fib3(12)) == 144);
    const std::size_t bits = bit_length(value_of(fib3(10000)));
    CHECK(bits >= 6900);
    CHECK(bits <= 7000);
}

TEST_CASE("fib4 closed form: exact early, approximate later, overflow at the end") {
    const FibOutcome small = fib4(7);
    CHECK(value_of(small) == 13);
    CHECK(small.status == FibStatus::Exact);

    const FibOutcome mid = fib4(100);
    REQUIRE(mid.ok());
    CHECK(*mid.value != oracle_fib(100));
    CHECK(mid.status == FibStatus::Approximate);

    const FibOutcome big = fib4(1600);
    REQUIRE_FALSE(big.ok());
    CHECK(big.failure == FibFailure::FloatOverflow);
}

TEST_CASE("fib5 matches the oracle exactly up to its measured threshold") {
    CHECK(value_of(fib5(11)) == 89);
    CHECK(fib5(11).status == FibStatus::Exact);

    const std::uint64_t threshold = measured_exact_through(AlgoId::Fib5);
    for (std::uint64_t n = 0; n <= threshold; ++n) {
        const FibOutcome outcome = fib5(n);
        CHECK(outcome.status == FibStatus::Exact);
        CHECK(*outcome.value == oracle_fib(n));
    }
    const FibOutcome beyond = fib5(threshold + 1);
    REQUIRE(beyond.ok());
    CHECK(beyond.status == FibStatus::Approximate);
    CHECK(*beyond.value != oracle_fib(threshold + 1));

    // n=79 sits past the exact range: approximate status or a mismatch
    const FibOutcome at79 = fib5(79);
    REQUIRE(at79.ok());
    CHECK((at79.status == FibStatus::Approximate ||
           *at79.value != oracle_fib(79)));
}

TEST_CASE("fib4 and fib5 agree with each other in the approximate range") {
    // psi^n is far below one ulp of phi^n here, so both formulas round the
    // same double
    CHECK(value_of(fib4(120)) == value_of(fib5(120)));
}

TEST_CASE("fib4/fib5 can run on the repeated-squaring power backend") {
    RunOptions options;
    options.use_num_pow_iter = true;
    for (std::uint64_t n = 0; n <= 40; ++n) {
        CHECK(value_of(fib4(n, options)) == oracle_fib(n));
        CHECK(value_of(fib5(n, options)) == oracle_fib(n));
    }
    const FibOutcome overflowed = fib5(1600, options);
    REQUIRE_FALSE(overflowed.ok());
    CHECK(overflowed.failure == FibFailure::FloatOverflow);
}

TEST_CASE("fib6 iterative matrix power") {
    CHECK(value_of(fib6(2)) == 1);
    CHECK(value_of(fib6(30)) == 832040);
    CHECK(value_of(fib6(900)) == oracle_fib(900));
}

TEST_CASE("fib7 and fib8 squared matrix powers") {
    CHECK(value_of(fib7(1)) == 1);
    CHECK(value_of(fib8(1)) == 1);
    CHECK(value_of(fib7(70)) == BigInt("190392490709135"));
    CHECK(value_of(fib8(70)) == BigInt("190392490709135"));

    auto rng = test::make_rng(23);
    std::uniform_int_distribution<std::uint64_t> dist(0, 10000);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t n = dist(rng);
        CHECK(value_of(fib7(n)) == value_of(fib8(n)));
    }
}

TEST_CASE("fib9 doubling identities") {
    CHECK(value_of(fib9(2)) == 1);
    CHECK(value_of(fib9(21)) == 10946);
    CHECK(BigInt(89 * 89 + 55 * 55) == 10946);  // F_21 = F_11^2 + F_10^2
    CHECK(value_of(fib9(10000)) == oracle_fib(10000));
}

TEST_CASE("fib10 two-phase doubling") {
    CHECK(value_of(fib10(0)) == 0);
    CHECK(value_of(fib10(1000)) == oracle_fib(1000));
    for (std::uint64_t n = 0; n <= 300; ++n) {
        CHECK(value_of(fib10(n)) == value_of(fib9(n)));
    }
}

TEST_CASE("fib10 marks only logarithmically many cells") {
    const auto marks = detail::fib10_marks(10000);
    const std::uint64_t lg = static_cast<std::uint64_t>(
        std::ceil(std::log2(static_cast<double>(10000))));
    CHECK(marks.size() <= 4 * lg + 3);
    CHECK(marks.back() == 10000);
    for (std::size_t i = 1; i < marks.size(); ++i) {
        CHECK(marks[i - 1] < marks[i]);  // ascending, unique
    }
}

TEST_CASE("fib10 memo table only holds true Fibonacci values") {
    const auto table = detail::fib10_table(10000);
    for (const auto& [index, value] : table) {
        CHECK(value == oracle_fib(index));
    }
    CHECK(table.size() == detail::fib10_marks(10000).size() + 3);
}

TEST_CASE("fib11 alternative even identity") {
    CHECK(value_of(fib11(2)) == 1);
    CHECK(value_of(fib11(20)) == 6765);
    CHECK(BigInt(55 * 55 + 2 * 34 * 55) == 6765);  // F_20 = F_10^2 + 2 F_9 F_10

    auto rng = test::make_rng(29);
    std::uniform_int_distribution<std::uint64_t> dist(0, 10000);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t n = dist(rng);
        CHECK(value_of(fib11(n)) == value_of(fib9(n)));
    }
}

TEST_CASE("fib12 iterated rounding") {
    CHECK(value_of(fib12(3)) == 2);
    const std::uint64_t threshold = measured_exact_through(AlgoId::Fib12);
    CHECK(value_of(fib12(threshold)) == oracle_fib(threshold));
    CHECK(fib12(threshold).status == FibStatus::Exact);
    CHECK(value_of(fib12(threshold + 1)) != oracle_fib(threshold + 1));

    const FibOutcome far = fib12(200);
    REQUIRE(far.ok());
    CHECK(far.status == FibStatus::Approximate);

    const FibOutcome overflowed = fib12(2000);
    REQUIRE_FALSE(overflowed.ok());
    CHECK(overflowed.failure == FibFailure::FloatOverflow);
}

TEST_CASE("all algorithms agree on the shared exact range") {
    const std::vector<AlgoId> without_fib1 = {
        AlgoId::Fib2, AlgoId::Fib3,  AlgoId::Fib4,  AlgoId::Fib5,
        AlgoId::Fib6, AlgoId::Fib7,  AlgoId::Fib8,  AlgoId::Fib9,
        AlgoId::Fib10, AlgoId::Fib11, AlgoId::Fib12,
    };
    for (std::uint64_t n : {0ULL, 1ULL, 10ULL, 30ULL}) {
        const BigInt expected = value_of(fib1(n));
        for (AlgoId id : without_fib1) {
            CHECK(value_of(run_algorithm(id, n)) == expected);
        }
    }
    for (std::uint64_t n : {40ULL, 64ULL, 70ULL}) {
        const BigInt expected = oracle_fib(n);
        for (AlgoId id : without_fib1) {
            CHECK(value_of(run_algorithm(id, n)) == expected);
        }
    }
}

TEST_CASE("oracle agreement for the exact algorithms") {
    const std::vector<AlgoId> exact_ids = {
        AlgoId::Fib2, AlgoId::Fib3, AlgoId::Fib6,  AlgoId::Fib7,
        AlgoId::Fib8, AlgoId::Fib9, AlgoId::Fib10, AlgoId::Fib11,
    };
    for (std::uint64_t n = 0; n <= 200; ++n) {
        const BigInt expected = oracle_fib(n);
        for (AlgoId id : exact_ids) {
            const FibOutcome outcome = run_algorithm(id, n);
            CHECK(outcome.status == FibStatus::Exact);
            CHECK(value_of(outcome) == expected);
        }
    }
}

TEST_CASE("standalone doubling identity checks against the oracle") {
    for (std::uint64_t k = 1; k <= 200; ++k) {
        const BigInt fk = oracle_fib(k);
        const BigInt fk1 = oracle_fib(k + 1);
        const BigInt fkm1 = oracle_fib(k - 1);
        CHECK(oracle_fib(2 * k + 1) == fk1 * fk1 + fk * fk);
        CHECK(oracle_fib(2 * k) == 2 * fk1 * fk - fk * fk);
        CHECK(oracle_fib(2 * k) == fk * fk + 2 * fkm1 * fk);
    }
}

TEST_CASE("consecutive invocations share no state") {
    for (AlgoId id : {AlgoId::Fib2, AlgoId::Fib9, AlgoId::Fib10, AlgoId::Fib11}) {
        const FibOutcome first = run_algorithm(id, 500);
        const FibOutcome second = run_algorithm(id, 500);
        CHECK(value_of(first) == value_of(second));
        CHECK(first.status == second.status);
    }
}

TEST_CASE("fib_signed handles negative indices via negafib") {
    CHECK(value_of(fib_signed(AlgoId::Fib3, -4)) == -3);
    CHECK(value_of(fib_signed(AlgoId::Fib3, -5)) == 5);
    CHECK(value_of(fib_signed(AlgoId::Fib3, 0)) == 0);
    CHECK(value_of(fib_signed(AlgoId::Fib3, 12)) == 144);

    for (std::uint64_t n = 0; n <= 50; ++n) {
        const BigInt expected = negafib(n, oracle_fib(n));
        CHECK(value_of(fib_signed(AlgoId::Fib3, -static_cast<std::int64_t>(n))) ==
              expected);
    }
}

TEST_CASE("fib_signed propagates approximate and failed statuses") {
    const FibOutcome failed = fib_signed(AlgoId::Fib4, -1600);
    REQUIRE_FALSE(failed.ok());
    CHECK(failed.failure == FibFailure::FloatOverflow);

    const FibOutcome approx = fib_signed(AlgoId::Fib5, -100);
    REQUIRE(approx.ok());
    CHECK(approx.status == FibStatus::Approximate);
    CHECK(*approx.value == negafib(100, value_of(fib5(100))));
}

TEST_CASE("approximate status never appears on the exact algorithms") {
    for (const auto& d : Registry::instance().descriptors()) {
        if (d.exactness != ExactnessClass::Exact || d.id == AlgoId::Fib1) {
            continue;
        }
        for (std::uint64_t n : {0ULL, 5ULL, 100ULL, 500ULL}) {
            CHECK(run_algorithm(d.id, n).status == FibStatus::Exact);
        }
    }
}
